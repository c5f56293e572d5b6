#include "bmu/mult_unitary.hpp"

#include <chrono>
#include <cmath>
#include <functional>

namespace bmu {

MultUnitary::MultUnitary(Space l, LegOperator f, Braiding braiding)
    : l_(std::move(l)), f_(std::move(f)), braiding_(std::move(braiding)) {
  const Legs ll{l_, l_};
  if (f_.domain() != ll || f_.codomain() != ll)
    throw SignatureError("multiplicative unitary must act on " + describe(ll) + ", got " +
                         describe(f_.domain()) + " -> " + describe(f_.codomain()));
  if (!braiding_) throw BraidingError("multiplicative unitary needs a braiding");
}

double pentagon_residual(const MultUnitary& m) {
  const Legs ctx{m.space(), m.space(), m.space()};
  const LegOperator f12 = embed_adjacent(m.op(), ctx, 1);
  const LegOperator f23 = embed_adjacent(m.op(), ctx, 2);
  const LegOperator c12 = embed_adjacent(m.crossing(), ctx, 1);
  const LegOperator lhs = compose(f23, f12);
  const LegOperator rhs =
      compose(f12, compose(c12, compose(f23, compose(adjoint(c12), f23))));
  return hs_distance(lhs, rhs);
}

OperatorSpan hatA(const MultUnitary& m) { return span_from_slices(m.op(), SliceSide::right); }

OperatorSpan A_span(const MultUnitary& m) { return span_from_slices(m.op(), SliceSide::left); }

OperatorSpan C_span(const MultUnitary& m) {
  return span_from_slices(compose(adjoint(m.crossing()), m.op()), SliceSide::right);
}

OperatorSpan D_span(const MultUnitary& m) {
  return span_from_slices(compose(m.crossing(), adjoint(m.op())), SliceSide::left);
}

MultUnitary dual(const MultUnitary& m) {
  const LegOperator c = m.crossing();
  LegOperator fhat = compose(adjoint(c), compose(adjoint(m.op()), c));
  return MultUnitary(m.space(), std::move(fhat), reversed(m.braiding()));
}

int goodness(const MultUnitary& m) {
  const int d = m.space().dim;
  const Legs one{m.space()};
  const Matrix& f = m.op().matrix();
  const Matrix c = m.crossing().matrix();
  const Matrix id = Matrix::Identity(d, d);
  Matrix t(static_cast<Eigen::Index>(d) * d * d * d, static_cast<Eigen::Index>(d) * d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      Matrix a = Matrix::Zero(d, d);
      a(k, l) = 1.0;
      LegOperator al(Legs{m.space(), m.space()}, Legs{m.space(), m.space()},
                     tensor(LegOperator(one, one, a), LegOperator(one, one, id)).matrix());
      Matrix out = f * al.matrix() * f.adjoint() - c * al.matrix() * c.adjoint();
      t.col(static_cast<Eigen::Index>(k) * d + l) = vec(out);
    }
  return kernel_of_linear_map(t, one, one).rank();
}

RegularityReport regularity_classify(const MultUnitary& m) {
  RegularityReport r;
  r.full = m.space().dim * m.space().dim;
  r.rank_C = C_span(m).rank();
  r.rank_D = D_span(m).rank();
  r.goodness_dim = goodness(m);
  r.good = r.goodness_dim == 1;
  r.semi_regular = r.rank_C == r.full;
  r.regular = r.semi_regular;
  r.bi_regular = r.regular && r.rank_D == r.full;
  r.dual_consistent = r.regular == (C_span(dual(m)).rank() == r.full);
  return r;
}

Conjugator comult_conjugator(const MultUnitary& m, Comult variant) {
  const Legs aux{m.space()};
  switch (variant) {
    case Comult::op: return Conjugator{adjoint(m.op()), aux, AuxSide::left};
    case Comult::std:
      return Conjugator{compose(m.crossing(), adjoint(m.op())), aux, AuxSide::left};
    case Comult::right: return Conjugator{m.op(), aux, AuxSide::right};
  }
  throw SignatureError("unknown comultiplication variant");
}

LegOperator comult(const MultUnitary& m, const LegOperator& a, Comult variant) {
  return comult_conjugator(m, variant).apply(a);
}

namespace {

using Clock = std::chrono::steady_clock;

struct AlgebraSide {
  OperatorSpan algebra;
  Comult comult;
  CrossVariant variant;
};

AlgebraSide hat_side(const MultUnitary& m) { return {hatA(m), Comult::op, CrossVariant::habt}; }
AlgebraSide left_side(const MultUnitary& m) {
  return {A_span(m), Comult::right, CrossVariant::bt};
}

PodlesResult podles(const MultUnitary& m, const AlgebraSide& side, double tol) {
  const Legs l{m.space()};
  const Legs ll{m.space(), m.space()};
  const BraidingProvider& c = *m.braiding();
  PodlesResult r;
  const OperatorSpan target = crossed_product(side.algebra, side.algebra, c, side.variant);
  r.rank_target = target.rank();
  std::vector<Matrix> deltas, alphas, betas;
  for (const auto& a : side.algebra.basis()) {
    deltas.push_back(comult(m, a, side.comult).matrix());
    alphas.push_back(cross_alpha(a, l, side.variant, c).matrix());
    betas.push_back(cross_beta(a, l, side.variant, c).matrix());
  }
  auto both_orders = [&](const std::vector<Matrix>& factors) {
    std::vector<Matrix> dx, xd;
    for (const auto& d : deltas)
      for (const auto& x : factors) {
        dx.push_back(d * x);
        xd.push_back(x * d);
      }
    return equals(OperatorSpan::from_generators(ll, ll, dx), target, tol) &&
           equals(OperatorSpan::from_generators(ll, ll, xd), target, tol);
  };
  r.right = both_orders(alphas);
  r.left = both_orders(betas);
  return r;
}

double coassoc(const MultUnitary& m, const AlgebraSide& side, double tol) {
  const Legs l{m.space()};
  CrossedProduct cp(side.algebra, side.algebra, m.braiding(), side.variant);
  const Conjugator delta = comult_conjugator(m, side.comult);
  const Conjugator id = Conjugator::identity(l);
  std::vector<LegOperator> xs;
  for (const auto& a : side.algebra.basis()) xs.push_back(delta.apply(a));
  auto lhs = cp.extend(delta, id, xs, tol);
  auto rhs = cp.extend(id, delta, xs, tol);
  double worst = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) worst = std::max(worst, hs_distance(lhs[k], rhs[k]));
  return worst;
}

MultiplierResult multiplier(const MultUnitary& m, const OperatorSpan& s1, const OperatorSpan& s2,
                            CrossVariant variant, double tol) {
  const Legs l{m.space()};
  const Legs ll{m.space(), m.space()};
  const BraidingProvider& c = *m.braiding();
  MultiplierResult r;
  const OperatorSpan target = crossed_product(s1, s2, c, variant);
  r.rank_target = target.rank();
  r.multiplier = relative_multiplier_contains(target, m.op(), tol);
  std::vector<Matrix> betas;
  for (const auto& b : s2.basis()) betas.push_back(cross_beta(b, l, variant, c).matrix());
  std::vector<Matrix> gens;
  for (const auto& a : s1.basis()) {
    Matrix af = cross_alpha(a, l, variant, c).matrix() * m.op().matrix();
    for (const auto& b : betas) gens.push_back(af * b);
  }
  const OperatorSpan sandwich = OperatorSpan::from_generators(ll, ll, gens);
  r.rank_sandwich = sandwich.rank();
  r.distance = projector_distance(sandwich, target);
  r.sandwich = r.rank_sandwich == r.rank_target && r.distance < tol;
  return r;
}

}  // namespace

PodlesResult podles_check(const MultUnitary& m, double tol) {
  return podles(m, hat_side(m), tol);
}

PodlesResult podles_check_left_algebra(const MultUnitary& m, double tol) {
  return podles(m, left_side(m), tol);
}

double coassoc_check(const MultUnitary& m, double tol) { return coassoc(m, hat_side(m), tol); }

double coassoc_check_left_algebra(const MultUnitary& m, double tol) {
  return coassoc(m, left_side(m), tol);
}

MultiplierResult multiplier_theorem_check(const MultUnitary& m, double tol) {
  return multiplier(m, hatA(m), hatA(dual(m)), CrossVariant::hbt, tol);
}

MultiplierResult multiplier_theorem_check_left_algebra(const MultUnitary& m, double tol) {
  return multiplier(m, A_span(dual(m)), A_span(m), CrossVariant::bt, tol);
}

bool check_passes(double value, const std::string& relation, double threshold) {
  if (std::isnan(value)) return false;
  if (relation == "<") return value < threshold;
  if (relation == "==") return value == threshold;
  if (relation == ">=") return value >= threshold;
  return false;
}

bool Certificate::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const Check* Certificate::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

class CheckList {
 public:
  explicit CheckList(Certificate& cert) : cert_(cert) {}

  // Runs `compute`; a thrown library error records NaN so the check fails.
  double run(const std::string& name, const std::string& relation, double threshold,
             const std::function<double()>& compute) {
    const auto t0 = Clock::now();
    double value = std::numeric_limits<double>::quiet_NaN();
    try {
      value = compute();
    } catch (const Error&) {
    }
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    cert_.checks.push_back(
        Check{name, value, relation, threshold, check_passes(value, relation, threshold), dt});
    return value;
  }

 private:
  Certificate& cert_;
};

double flag(bool b) { return b ? 1.0 : 0.0; }

void add_gates(CheckList& list, const MultUnitary& m, double tol) {
  list.run("unitarity_defect", "<", tol, [&] { return unitarity_defect(m.op()); });
  list.run("pentagon_residual", "<", tol, [&] { return pentagon_residual(m); });
}

}  // namespace

Certificate pentagon_certificate(const MultUnitary& m, double tol) {
  Certificate cert;
  CheckList list(cert);
  add_gates(list, m, tol);
  return cert;
}

Certificate full_certificate(const MultUnitary& m, double tol) {
  Certificate cert;
  CheckList list(cert);
  add_gates(list, m, tol);
  list.run("dual_pentagon_residual", "<", tol, [&] { return pentagon_residual(dual(m)); });
  list.run("braiding_hexagon_residual", "<", tol, [&] {
    HexagonReport h = check_hexagons(*m.braiding(), {m.space()}, tol);
    return std::max(h.max_residual, h.yang_baxter_residual);
  });
  BraidingRegularityReport br;
  try {
    br = braiding_regularity(*m.braiding(), m.space(), m.space());
  } catch (const Error&) {
  }
  const double full = m.space().dim * m.space().dim;
  list.run("braiding_right_rank", "==", full, [&] { return double(br.right_rank); });
  list.run("braiding_left_rank", "==", full, [&] { return double(br.left_rank); });

  cert.regularity = regularity_classify(m);
  const RegularityReport& reg = cert.regularity;
  list.run("goodness_kernel_dim", "==", 1, [&] { return double(reg.goodness_dim); });
  list.run("rank_C", "==", full, [&] { return double(reg.rank_C); });
  list.run("rank_D", "==", full, [&] { return double(reg.rank_D); });
  list.run("dual_consistent", "==", 1, [&] { return flag(reg.dual_consistent); });

  const OperatorSpan ah = hatA(m);
  list.run("hatA_algebra", "==", 1, [&] { return flag(is_algebra(ah, tol)); });
  list.run("hatA_nondegenerate", "==", 1, [&] { return flag(is_nondegenerate(ah, tol)); });
  list.run("hatA_star_closed", "==", 1, [&] { return flag(is_star_closed(ah, tol)); });

  BialgebraCertificate& bc = cert.bialgebra;
  list.run("podles", "==", 1, [&] {
    PodlesResult p = podles_check(m, tol);
    bc.podles_right = p.right;
    bc.podles_left = p.left;
    return flag(p.right && p.left);
  });
  bc.coassoc_residual = list.run("coassoc_residual", "<", tol, [&] { return coassoc_check(m, tol); });
  list.run("multiplier", "==", 1, [&] {
    MultiplierResult r = multiplier_theorem_check(m, tol);
    bc.multiplier_ok = r.multiplier;
    bc.span_equality_ok = r.sandwich;
    return flag(r.multiplier);
  });
  list.run("sandwich_span_equality", "==", 1, [&] { return flag(bc.span_equality_ok); });

  list.run("left_podles", "==", 1, [&] {
    PodlesResult p = podles_check_left_algebra(m, tol);
    return flag(p.right && p.left);
  });
  list.run("left_coassoc_residual", "<", tol, [&] { return coassoc_check_left_algebra(m, tol); });
  MultiplierResult left;
  list.run("left_multiplier", "==", 1, [&] {
    left = multiplier_theorem_check_left_algebra(m, tol);
    return flag(left.multiplier);
  });
  list.run("left_sandwich_span_equality", "==", 1, [&] { return flag(left.sandwich); });
  return cert;
}

}  // namespace bmu
