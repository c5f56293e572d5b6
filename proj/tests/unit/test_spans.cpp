#include "doctest.h"

#include <random>

#include "bmu/examples.hpp"
#include "bmu/spans.hpp"
#include "../support/oracles.hpp"

using namespace bmu;

namespace {

Matrix unit(int d, int i, int j) {
  Matrix m = Matrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

}  // namespace

TEST_CASE("slice spans of the Z2 Kac-Takesaki unitary") {
  auto w = kac_takesaki(cyclic_group(2)).op();
  Space l = w.domain()[0];
  auto right = span_from_slices(w, SliceSide::right);
  auto left = span_from_slices(w, SliceSide::left);
  CHECK(right.rank() == 2);
  CHECK(left.rank() == 2);
  CHECK(right.rank() == oracle::span_rank(oracle::right_slices(w.matrix(), 2, 2)));

  auto diag = OperatorSpan::from_generators({l}, {l}, std::vector<Matrix>{unit(2, 0, 0), unit(2, 1, 1)});
  CHECK(equals(right, diag, 1e-12));
  Matrix shift(2, 2);
  shift << 0, 1, 1, 0;
  auto expected_left = OperatorSpan::from_generators(
      {l}, {l}, std::vector<Matrix>{Matrix::Identity(2, 2), shift});
  CHECK(equals(left, expected_left, 1e-12));
  CHECK_FALSE(contains(diag, LegOperator({l}, {l}, unit(2, 0, 1)), 1e-9));
  CHECK(equals(right, right, 1e-12));

  auto flip = LegOperator({l, l}, {l, l}, oracle::flip(2, 2));
  CHECK(span_from_slices(flip, SliceSide::right).rank() == 4);
  auto sw = compose(flip, w);
  CHECK(equals(span_from_slices(sw, SliceSide::right), OperatorSpan::full({l}, {l}), 1e-12));
}

TEST_CASE("slice spans do not depend on the slicing basis") {
  std::mt19937_64 rng(19);
  for (int n : {2, 3, 4}) {
    auto w = kac_takesaki(cyclic_group(n)).op();
    Matrix u = oracle::random_unitary(n, rng), v = oracle::random_unitary(n, rng);
    for (auto side : {SliceSide::right, SliceSide::left}) {
      auto a = span_from_slices(w, side);
      auto b = span_from_slices(w, side, u, v);
      CHECK(projector_distance(a, b) < 1e-10);
    }
  }
}

TEST_CASE("span predicates") {
  Space l("L", 2);
  auto nil = OperatorSpan::from_generators({l}, {l}, std::vector<Matrix>{unit(2, 0, 1)});
  CHECK(is_algebra(nil, 1e-12));
  CHECK_FALSE(is_star_closed(nil, 1e-12));
  auto zero = OperatorSpan::from_generators({l}, {l}, std::vector<Matrix>{Matrix::Zero(2, 2)});
  CHECK(zero.rank() == 0);
  CHECK_FALSE(is_nondegenerate(zero, 1e-12));
  auto full = OperatorSpan::full({l}, {l});
  CHECK(is_algebra(full, 1e-12));
  CHECK(is_star_closed(full, 1e-12));
  CHECK(is_nondegenerate(full, 1e-12));
  CHECK(is_subspace(OperatorSpan::scalars({l}), full, 1e-12));
  CHECK_FALSE(is_subspace(full, OperatorSpan::scalars({l}), 1e-12));
  CHECK(projector_distance(full, OperatorSpan::scalars({l})) == 1.0);
  CHECK(full.gram_residual() < 1e-14);
}

TEST_CASE("products and adjoints of spans") {
  Space l("L", 2);
  auto upper = OperatorSpan::from_generators({l}, {l}, std::vector<Matrix>{unit(2, 0, 1)});
  auto lower = adjoint_span(upper);
  CHECK(contains(lower, LegOperator({l}, {l}, unit(2, 1, 0)), 1e-12));
  auto p = product_span(upper, lower);
  CHECK(p.rank() == 1);
  CHECK(contains(p, LegOperator({l}, {l}, unit(2, 0, 0)), 1e-12));
}

TEST_CASE("kernel of a linear map") {
  Space l("L", 2);
  CHECK(kernel_of_linear_map(Matrix::Zero(4, 4), {l}, {l}).rank() == 4);
  CHECK(kernel_of_linear_map(Matrix::Identity(4, 4), {l}, {l}).rank() == 0);

  // The goodness map of the Z2 Kac-Takesaki unitary has only scalars in its kernel.
  auto w = kac_takesaki(cyclic_group(2)).op();
  CHECK(oracle::goodness_dim(w.matrix(), oracle::flip(2, 2), 2) == 1);
}

TEST_CASE("crossed products") {
  auto m = kac_takesaki(cyclic_group(2));
  auto flip = m.braiding();
  Space l = m.space();
  auto diag = span_from_slices(m.op(), SliceSide::right);
  for (auto v : {CrossVariant::hbt, CrossVariant::habt, CrossVariant::bt}) {
    auto cp = crossed_product(diag, diag, *flip, v);
    CHECK(cp.rank() == 4);
    CHECK(crossed_product_commutation_check(diag, diag, *flip, v, 1e-10));
  }
  auto scalars = OperatorSpan::scalars({l});
  CHECK(crossed_product_commutation_check(scalars, diag, *flip, CrossVariant::hbt, 1e-10));
  CHECK(relative_multiplier_contains(scalars, LegOperator::identity({l}), 1e-12));
  CHECK(relative_multiplier_contains(diag, LegOperator::identity({l}), 1e-12));

  std::mt19937_64 rng(23);
  auto cp = crossed_product(diag, diag, *flip, CrossVariant::hbt);
  CHECK_FALSE(relative_multiplier_contains(
      cp, LegOperator({l, l}, {l, l}, oracle::random_unitary(4, rng)), 1e-8));
}

TEST_CASE("extension over a crossed product") {
  auto m = kac_takesaki(cyclic_group(2));
  Space l = m.space();
  auto diag = span_from_slices(m.op(), SliceSide::right);
  CrossedProduct cp(diag, diag, m.braiding(), CrossVariant::hbt);
  auto id = Conjugator::identity({l});
  std::vector<LegOperator> xs{cp.span().element(0), cp.span().element(3)};
  auto out = cp.extend(id, id, xs, 1e-10);
  for (size_t i = 0; i < xs.size(); ++i) CHECK(hs_distance(out[i], xs[i]) < 1e-12);

  Matrix off = Matrix::Zero(4, 4);
  off(0, 1) = 1.0;
  CHECK_THROWS_AS(cp.extend(id, id, {LegOperator({l, l}, {l, l}, off)}, 1e-10),
                  DecompositionError);
}
