#include "doctest.h"

#include <random>

#include "bmu/examples.hpp"
#include "bmu/mult_unitary.hpp"
#include "../support/oracles.hpp"

using namespace bmu;

namespace {

MultUnitary identity_mu(int d, Braiding b, std::optional<std::vector<int>> grading = {}) {
  Space l("L", d, grading);
  return MultUnitary(l, LegOperator::identity({l, l}), std::move(b));
}

MultUnitary random_mu(int d, std::mt19937_64& rng) {
  Space l("L", d);
  return MultUnitary(l, LegOperator({l, l}, {l, l}, oracle::random_unitary(d * d, rng)),
                     make_flip());
}

}  // namespace

TEST_CASE("Pentagon residual against the index oracle") {
  for (int n = 1; n <= 6; ++n) {
    auto w = kac_takesaki(cyclic_group(n));
    CHECK(pentagon_residual(w) == doctest::Approx(oracle::pentagon_flip(w.op().matrix(), n)));
    CHECK(pentagon_residual(w) < 1e-14);
  }
  auto s3 = kac_takesaki(symmetric_group(3));
  CHECK(s3.op().matrix().rows() == 36);
  CHECK(pentagon_residual(s3) < 1e-14);

  CHECK(pentagon_residual(identity_mu(2, make_flip())) == 0.0);
  CHECK(pentagon_residual(identity_mu(3, make_phase(3), std::vector<int>{0, 1, 2})) < 1e-14);

  std::mt19937_64 rng(29);
  auto r = random_mu(2, rng);
  CHECK(pentagon_residual(r) > 1e-2);
  CHECK(pentagon_residual(r) == doctest::Approx(oracle::pentagon_flip(r.op().matrix(), 2)));
}

TEST_CASE("Kac-Takesaki spans and goodness") {
  for (int n : {2, 3, 4}) {
    auto w = kac_takesaki(cyclic_group(n));
    Matrix cinv_w = oracle::flip(n, n) * w.op().matrix();
    CHECK(hatA(w).rank() == n);
    CHECK(A_span(w).rank() == n);
    CHECK(C_span(w).rank() == oracle::span_rank(oracle::right_slices(cinv_w, n, n)));
    CHECK(C_span(w).rank() == n * n);
    CHECK(goodness(w) == 1);
    CHECK(goodness(w) == oracle::goodness_dim(w.op().matrix(), oracle::flip(n, n), n));
    auto r = regularity_classify(w);
    CHECK(r.regular);
    CHECK(r.bi_regular);
    CHECK(r.good);
    CHECK(r.dual_consistent);
  }
}

TEST_CASE("identity and swap controls under the flip") {
  // F = 1: C(1) is spanned by the slices of the flip, hence everything.
  auto id = identity_mu(2, make_flip());
  CHECK(C_span(id).rank() == oracle::span_rank(oracle::right_slices(oracle::flip(2, 2), 2, 2)));
  CHECK(regularity_classify(id).regular);
  CHECK(goodness(id) == oracle::goodness_dim(Matrix::Identity(4, 4), oracle::flip(2, 2), 2));

  // F = Σ: c⁻¹Σ = 1 has scalar slices only, and every a satisfies Σ(a⊗1)Σ = 1⊗a.
  Space l("L", 2);
  MultUnitary sigma(l, LegOperator({l, l}, {l, l}, oracle::flip(2, 2)), make_flip());
  auto r = regularity_classify(sigma);
  CHECK(r.rank_C == 1);
  CHECK_FALSE(r.regular);
  CHECK(r.goodness_dim == 4);
  CHECK_FALSE(r.good);
}

TEST_CASE("duality") {
  for (int n : {2, 3}) {
    auto w = kac_takesaki(cyclic_group(n));
    auto d = dual(w);
    CHECK(pentagon_residual(d) < 1e-13);
    CHECK(projector_distance(C_span(d), adjoint_span(C_span(w))) < 1e-9);
    CHECK(regularity_classify(d).regular == regularity_classify(w).regular);
    CHECK(projector_distance(D_span(w), adjoint_span(C_span(w))) < 1e-9);
    CHECK(hs_distance(dual(d).op(), w.op()) < 1e-14);
  }
  auto super = identity_mu(2, make_phase(2), std::vector<int>{0, 1});
  auto sd = dual(super);
  CHECK(sd.braiding()->kind() == "reversed(phase)");
  CHECK(projector_distance(C_span(sd), adjoint_span(C_span(super))) < 1e-9);
}

TEST_CASE("comultiplications") {
  auto w = kac_takesaki(cyclic_group(3));
  auto basis = hatA(w).basis();
  for (const auto& a : basis) {
    auto op = comult(w, a, Comult::op);
    auto st = comult(w, a, Comult::std);
    CHECK(hs_distance(st, compose(compose(w.crossing(), op), adjoint(w.crossing()))) < 1e-13);
    CHECK(op.domain() == w.legs());
  }
  auto c = comult_conjugator(w, Comult::right);
  auto x = A_span(w).element(1);
  CHECK(hs_distance(c.apply(x), comult(w, x, Comult::right)) < 1e-13);
}

TEST_CASE("bialgebra checks") {
  auto w = kac_takesaki(cyclic_group(2));
  auto p = podles_check(w, 1e-9);
  CHECK(p.right);
  CHECK(p.left);
  CHECK(p.rank_target == 4);
  auto pl = podles_check_left_algebra(w, 1e-9);
  CHECK(pl.right);
  CHECK(pl.left);
  CHECK(coassoc_check(w, 1e-9) < 1e-10);
  CHECK(coassoc_check_left_algebra(w, 1e-9) < 1e-10);

  auto id = identity_mu(2, make_flip());
  CHECK(coassoc_check(id, 1e-9) < 1e-14);

  auto m = multiplier_theorem_check(w, 1e-8);
  CHECK(m.multiplier);
  CHECK(m.sandwich);
  CHECK(m.rank_sandwich == m.rank_target);
  auto ml = multiplier_theorem_check_left_algebra(w, 1e-8);
  CHECK(ml.multiplier);
  CHECK(ml.sandwich);

  std::mt19937_64 rng(31);
  // W followed by a random unitary on the second leg.
  Space l = w.space();
  auto g = LegOperator({l}, {l}, oracle::random_unitary(2, rng));
  MultUnitary bad(l, compose(tensor(LegOperator::identity({l}), g), w.op()), w.braiding());
  CHECK(pentagon_residual(bad) > 1e-3);
  auto mb = multiplier_theorem_check(bad, 1e-8);
  CHECK_FALSE((mb.multiplier && mb.sandwich));
}

TEST_CASE("certificates") {
  auto w = kac_takesaki(symmetric_group(3));
  auto cert = full_certificate(w);
  CHECK(cert.all_pass());
  REQUIRE(cert.find("pentagon_residual") != nullptr);
  CHECK(cert.find("pentagon_residual")->pass);
  CHECK(cert.regularity.rank_C == 36);

  auto id = identity_mu(2, make_phase(2), std::vector<int>{0, 1});
  auto pc = pentagon_certificate(id, 1e-10);
  CHECK(pc.all_pass());

  Space l("L", 2);
  Matrix broken = Matrix::Identity(4, 4);
  broken(0, 0) = 2.0;
  MultUnitary nonunitary(l, LegOperator({l, l}, {l, l}, broken), make_flip());
  auto nc = full_certificate(nonunitary);
  CHECK_FALSE(nc.all_pass());
  REQUIRE(nc.find("unitarity_defect") != nullptr);
  CHECK_FALSE(nc.find("unitarity_defect")->pass);

  CHECK(check_passes(0.5, "<", 1.0));
  CHECK_FALSE(check_passes(std::nan(""), "<", 1.0));
  CHECK(check_passes(4, "==", 4));
  CHECK(check_passes(5, ">=", 4));
}
