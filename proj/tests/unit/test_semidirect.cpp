#include "doctest.h"

#include "bmu/examples.hpp"
#include "bmu/semidirect.hpp"
#include "../support/oracles.hpp"

using namespace bmu;

TEST_CASE("fixed vectors of Kac-Takesaki unitaries") {
  for (int n : {2, 3, 5}) {
    auto w = kac_takesaki(cyclic_group(n), "K");
    auto fv = fixed_vectors(w);
    REQUIRE(fv.dim() == 1);
    CHECK(std::abs(std::abs(fv.basis[0].entries(0)) - 1.0) < 1e-12);
    CVector delta0 = CVector::Zero(n);
    delta0(0) = 1.0;
    CHECK(fixed_vector_residual(w, delta0) < 1e-14);
    CVector delta1 = CVector::Zero(n);
    delta1(1) = 1.0;
    CHECK(fixed_vector_residual(w, delta1) > 0.5);
  }
  Space k("K", 3);
  MultUnitary id(k, LegOperator::identity({k, k}), make_flip());
  CHECK(fixed_vectors(id).dim() == 3);
}

TEST_CASE("semi-direct product with trivial ingredients") {
  auto w = kac_takesaki(cyclic_group(2), "K");
  Space l("Lb", 2);
  MultUnitary f(l, LegOperator::identity({l, l}), make_flip());
  auto module = trivial_yd_module(w, l);
  auto op = semidirect_operator(w, module, f);
  Space k = w.space();
  Legs ctx{k, l, k, l};
  auto w13 = apply_distant(w.op(), ctx, 1, 3, Route::over, *make_flip());
  CHECK(hs_distance(op, w13) < 1e-14);
  auto p = semidirect_product(w, module, f);
  CHECK(pentagon_residual(p) < 1e-14);
  CHECK(p.space().dim == 4);

  // W = 1 with a trivial module: W⋉F is F on legs 2 and 4.
  MultUnitary wid(k, LegOperator::identity({k, k}), make_flip());
  auto fw = kac_takesaki(cyclic_group(2), "Lb");
  auto m2 = trivial_yd_module(wid, fw.space());
  auto op2 = semidirect_operator(wid, m2, fw);
  auto f24 = apply_distant(fw.op(), {k, fw.space(), k, fw.space()}, 2, 4, Route::under, *make_flip());
  CHECK(hs_distance(op2, f24) < 1e-14);
  CHECK(pentagon_residual(semidirect_product(wid, m2, fw)) < 1e-14);
}

TEST_CASE("semi-direct product of two Kac-Takesaki unitaries") {
  auto w = kac_takesaki(cyclic_group(2), "K");
  auto f = kac_takesaki(cyclic_group(2), "Lb");
  auto module = trivial_yd_module(w, f.space());
  auto r = semidirect_regularity_check(w, module, f);
  CHECK(r.pentagon_residual < 1e-10);
  CHECK(r.unitarity_defect < 1e-12);
  CHECK(r.route_discrepancy < 1e-12);
  CHECK(r.full == 16);
  CHECK(r.rank_C == 16);
  CHECK(r.regular);
  CHECK(r.f_regular);
  CHECK(r.fixed_dim == 1);
  CHECK(r.compression_distance < 1e-8);

  auto p = semidirect_product(w, module, f);
  Matrix cinv = oracle::flip(4, 4) * p.op().matrix();
  CHECK(oracle::span_rank(oracle::right_slices(cinv, 4, 4)) == 16);
}

TEST_CASE("semi-direct product with the sign module") {
  auto w = kac_takesaki(cyclic_group(2), "K");
  auto sign = z2_sign_module(w, "Lb");
  Space l = sign.h[0];
  // F = 1 solves the Pentagon in the YD category whose braiding is the super one.
  MultUnitary f(l, LegOperator::identity({l, l}), make_phase(2));
  auto p = semidirect_product(w, sign, f);
  CHECK(pentagon_residual(p) < 1e-10);
  auto r = semidirect_regularity_check(w, sign, f);
  CHECK(r.route_discrepancy < 1e-12);
}

TEST_CASE("semi-direct product input validation") {
  auto w = kac_takesaki(cyclic_group(2), "K");
  Space l("Lb", 2);
  MultUnitary bad(l, LegOperator({l, l}, {l, l}, oracle::flip(2, 2)), make_flip());
  auto module = trivial_yd_module(w, l);
  CHECK_THROWS_AS(semidirect_product(w, module, bad), CertificateError);

  auto table = ExplicitBraiding::tabulate(*make_flip(), {{w.space()}});
  MultUnitary wx(w.space(), w.op(), table);
  MultUnitary f(l, LegOperator::identity({l, l}), make_flip());
  CHECK_THROWS_AS(semidirect_product(wx, trivial_yd_module(wx, l), f), BraidingError);
}
