#include "doctest.h"

#include <random>

#include "bmu/braiding.hpp"
#include "bmu/examples.hpp"
#include "bmu/tensor_core.hpp"
#include "../support/oracles.hpp"

using namespace bmu;

namespace {

LegOperator rand_op(const Legs& legs, std::mt19937_64& rng) {
  return LegOperator(legs, legs, oracle::random_unitary(total_dim(legs), rng));
}

}  // namespace

TEST_CASE("compose and tensor basics") {
  Space l("L", 2), k("K", 3);
  auto id = LegOperator::identity({l});
  CHECK(hs_distance(compose(id, id), id) == 0.0);
  CHECK(tensor(LegOperator::identity({l}), LegOperator::identity({k})).matrix().isIdentity());
  CHECK(adjoint(id).matrix().isIdentity());

  auto w = kac_takesaki(cyclic_group(2)).op();
  Matrix expected = oracle::kac_takesaki({{0, 1}, {1, 0}});
  CHECK((w.matrix() - expected).norm() == 0.0);
  CHECK(compose(w, adjoint(w)).matrix().isIdentity(0));
  CHECK_THROWS_AS(compose(LegOperator::identity({k}), id), SignatureError);
}

TEST_CASE("tensor keeps the first factor most significant") {
  std::mt19937_64 rng(3);
  Space a("A", 2), b("B", 3);
  auto x = rand_op({a}, rng), y = rand_op({b}, rng);
  auto t = tensor(x, y);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      CHECK(std::abs(t.matrix()(i, j) - x.matrix()(i / 3, j / 3) * y.matrix()(i % 3, j % 3)) <
            1e-15);
}

TEST_CASE("embed_adjacent matches index-loop placement") {
  std::mt19937_64 rng(5);
  Space l("L", 2);
  Legs ctx{l, l, l};
  auto f = rand_op({l, l}, rng);
  CHECK((embed_adjacent(f, ctx, 1).matrix() - oracle::on_legs(f.matrix(), 2, 1, 2)).norm() <
        1e-14);
  CHECK((embed_adjacent(f, ctx, 2).matrix() - oracle::on_legs(f.matrix(), 2, 2, 3)).norm() <
        1e-14);
  CHECK_THROWS(embed_adjacent(f, ctx, 3));
}

TEST_CASE("apply_distant under the flip is the plain leg-13 placement") {
  std::mt19937_64 rng(7);
  Space l("L", 3);
  Legs ctx{l, l, l};
  auto flip = make_flip();
  auto f = rand_op({l, l}, rng);
  Matrix expected = oracle::on_legs(f.matrix(), 3, 1, 3);
  for (Route r : {Route::over, Route::under})
    CHECK((apply_distant(f, ctx, 1, 3, r, *flip).matrix() - expected).norm() < 1e-13);
  CHECK(apply_distant(LegOperator::identity({l, l}), ctx, 1, 3, Route::over, *flip)
            .matrix()
            .isIdentity(1e-14));
}

TEST_CASE("extract_distant inverts apply_distant") {
  std::mt19937_64 rng(11);
  auto phase = make_phase(4);
  Space l("L", 4, std::vector<int>{0, 1, 2, 3});
  Legs ctx{l, l, l};
  auto x = rand_op({l, l}, rng);
  for (Route r : {Route::over, Route::under}) {
    auto y = apply_distant(x, ctx, 1, 3, r, *phase);
    auto e = extract_distant(y, ctx, 1, 3, r, *phase);
    CHECK(e.residual < 1e-12);
    CHECK(hs_distance(e.op, x) < 1e-12);
  }
  auto ident = extract_distant(LegOperator::identity(ctx), ctx, 1, 3, Route::over, *phase);
  CHECK(ident.residual < 1e-12);
  CHECK(ident.op.matrix().isIdentity(1e-12));

  Space k("K", 2);
  auto w = kac_takesaki(cyclic_group(2), "K").op();
  auto flip = make_flip();
  auto w12 = embed_adjacent(w, {k, k, k}, 1);
  CHECK(extract_distant(w12, {k, k, k}, 1, 3, Route::over, *flip).residual > 0.5);
}

TEST_CASE("unitarity") {
  Space l("L", 2);
  CHECK(is_unitary(LegOperator::identity({l}), 1e-12));
  CHECK(is_unitary(kac_takesaki(cyclic_group(2)).op(), 1e-12));
  CHECK_FALSE(is_unitary(scale(LegOperator::identity({l}), 2.0), 1e-12));
}

TEST_CASE("slices and partial trace") {
  std::mt19937_64 rng(13);
  Space a("A", 2), b("B", 3);
  auto x = LegOperator({a, b}, {a, b}, oracle::random_unitary(6, rng));
  auto oracle_right = oracle::right_slices(x.matrix(), 2, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK((slice(x, 2, i, j).matrix() - oracle_right[i * 3 + j]).norm() < 1e-15);
  Matrix tr = partial_trace_keep(x.matrix(), {2, 3}, 0, 1);
  Matrix expected = Matrix::Zero(2, 2);
  for (int i = 0; i < 3; ++i) expected += oracle_right[i * 3 + i];
  CHECK((tr - expected).norm() < 1e-14);
}

TEST_CASE("vec round trip is row-major") {
  Matrix m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  CVector v = vec(m);
  CHECK(v(1) == cplx(2));
  CHECK(unvec(v, 2, 3) == m);
}
