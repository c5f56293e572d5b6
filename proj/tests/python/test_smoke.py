import numpy as np
import pytest

import bmu


def kt(n):
    return bmu.kac_takesaki(bmu.cyclic_group(n))


def test_kac_takesaki_matrix():
    w = kt(2).matrix
    expected = np.eye(4)[:, [0, 1, 3, 2]]
    assert np.allclose(w, expected)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_certificate(n):
    w = kt(n)
    assert bmu.pentagon_residual(w) < 1e-12
    ranks = bmu.span_ranks(w)
    assert ranks["hatA"] == n and ranks["A"] == n and ranks["C"] == n * n
    cert = bmu.certificate(w)
    assert cert["all_pass"]
    assert cert["regularity"]["rank_C"] == n * n


def test_swap_is_not_regular():
    sigma = np.eye(4)[:, [0, 2, 1, 3]]
    f = bmu.MultUnitary(bmu.Space("L", 2), sigma)
    reg = bmu.regularity(f)
    assert reg["rank_C"] == 1 and not reg["regular"]
    assert bmu.goodness(f) == 4


def test_sign_module_gives_super_braiding():
    phi = bmu.sign_module_braiding()
    super_c = np.diag([1, 1, 1, -1])[:, [0, 2, 1, 3]]
    assert np.allclose(phi, super_c)
    s = bmu.Space("S", 2, [0, 1])
    assert np.allclose(bmu.braiding("super").matrix(s, s), super_c)


def test_semidirect_product():
    p = bmu.semidirect_z2()
    assert p.space.dim == 4
    assert bmu.pentagon_residual(p) < 1e-10
    assert bmu.span_ranks(p)["C"] == 16


def test_statement_residual_matches_builtin():
    rng = np.random.default_rng(3)
    z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    q, _ = np.linalg.qr(z)
    l = bmu.Space("L", 2)
    f = bmu.MultUnitary(l, q)
    stmt = "F[2,3].F[1,2] == F[1,2].c[1,2].F[2,3].cinv[1,2].F[2,3]"
    r = bmu.statement_residual(stmt, [l, l, l], {"F": f})
    assert abs(r - bmu.pentagon_residual(f)) < 1e-12
    assert bmu.canonical_statement("F[2,3] .F[1,2]==F[1,2]") == "F[2,3].F[1,2] == F[1,2]"
    with pytest.raises(bmu.ParseError):
        bmu.canonical_statement("F[1,2")


def test_search_is_deterministic_and_certified():
    s = bmu.Space("L", 2, [0, 1])
    args = dict(braiding="super", degree_modulus=2, seed=4, restarts=3, max_iter=60)
    a = bmu.search(s, **args)
    b = bmu.search(s, **args)
    assert a == b
    for r in a["results"]:
        assert r["certificate"]["all_pass"]


def test_cli_exit_codes(tmp_path):
    out = tmp_path / "w.json"
    code, _, _ = bmu.run_cli(["generate", "kac-takesaki", "--n", "3", "-o", str(out)])
    assert code == 0
    code, text, _ = bmu.run_cli(["analyze", str(out), "--object", "W"])
    assert code == 0 and "certificate passed" in text
    assert bmu.run_cli(["generate", "bogus", "-o", str(out)])[0] == 2
