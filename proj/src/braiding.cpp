#include "bmu/braiding.hpp"

#include <cmath>
#include <numbers>

#include "bmu/spans.hpp"

namespace bmu {

namespace {

Legs concat(const Legs& a, const Legs& b) {
  Legs out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<std::string> ids(const Legs& legs) {
  std::vector<std::string> out;
  for (const auto& s : legs) out.push_back(s.id);
  return out;
}

// Swap of the two tensor factors, weighted by phase(i, j) on e_i ⊗ e_j.
template <class Phase>
LegOperator weighted_swap(const Legs& first, const Legs& second, Phase phase) {
  const int dh = total_dim(first), dk = total_dim(second);
  Matrix m = Matrix::Zero(dh * dk, dh * dk);
  for (int i = 0; i < dh; ++i)
    for (int j = 0; j < dk; ++j) m(j * dh + i, i * dk + j) = phase(i, j);
  return LegOperator(concat(first, second), concat(second, first), std::move(m));
}

class FlipBraiding : public BraidingProvider {
 public:
  LegOperator braid(const Legs& first, const Legs& second) const override {
    return weighted_swap(first, second, [](int, int) { return cplx(1.0); });
  }
  std::string kind() const override { return "flip"; }
};

class PhaseBraiding : public BraidingProvider {
 public:
  explicit PhaseBraiding(int m) : m_(m), roots_(m) {
    for (int k = 0; k < m; ++k) {
      // Exact values on the quarter turns keep the super and m = 4 cases
      // free of rounding noise.
      if ((4 * k) % m == 0) {
        static const cplx quarter[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
        roots_[k] = quarter[(4 * k / m) % 4];
      } else {
        roots_[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / m);
      }
    }
  }

  LegOperator braid(const Legs& first, const Legs& second) const override {
    for (const auto& s : concat(first, second))
      if (!s.graded())
        throw BraidingError("phase braiding needs graded spaces, '" + s.id + "' has no grading");
    return weighted_swap(first, second, [&](int i, int j) {
      long long e = static_cast<long long>(total_degree(first, i)) * total_degree(second, j);
      return roots_[((e % m_) + m_) % m_];
    });
  }
  std::string kind() const override { return "phase"; }
  int grading_modulus() const override { return m_; }
  int modulus() const { return m_; }

 private:
  int m_;
  std::vector<cplx> roots_;
};

}  // namespace

Braiding make_flip() { return std::make_shared<FlipBraiding>(); }

Braiding make_phase(int modulus) {
  if (modulus < 1) throw BraidingError("phase modulus must be >= 1");
  if (modulus == 1) return make_flip();
  return std::make_shared<PhaseBraiding>(modulus);
}

void ExplicitBraiding::set(const LegOperator& c, int first_legs) {
  const Legs& dom = c.domain();
  if (first_legs < 0) {
    if (dom.size() != 2) throw BraidingError("composite braiding entries need an explicit split");
    first_legs = 1;
  }
  if (first_legs < 1 || first_legs >= static_cast<int>(dom.size()))
    throw BraidingError("braiding entry split out of range");
  Legs first(dom.begin(), dom.begin() + first_legs), second(dom.begin() + first_legs, dom.end());
  if (concat(second, first) != c.codomain())
    throw BraidingError("cannot read braiding entry " + describe(dom) + " -> " +
                        describe(c.codomain()) + " as a crossing");
  entries_[Key{ids(first), ids(second)}] = c;
}

bool ExplicitBraiding::has(const Legs& first, const Legs& second) const {
  return entries_.count(Key{ids(first), ids(second)}) > 0;
}

LegOperator ExplicitBraiding::braid(const Legs& first, const Legs& second) const {
  if (first.empty() || second.empty()) return LegOperator::identity(concat(first, second));
  auto it = entries_.find(Key{ids(first), ids(second)});
  if (it != entries_.end()) {
    if (it->second.domain() != concat(first, second))
      throw BraidingError("stored entry for " + describe(first) + "," + describe(second) +
                          " has different spaces");
    return it->second;
  }
  if (first.size() > 1) {
    // c_{U⊗V,W} = (c_{U,W} ⊗ id_V)(id_U ⊗ c_{V,W})
    Legs u{first.front()}, v(first.begin() + 1, first.end());
    LegOperator inner = tensor(LegOperator::identity(u), braid(v, second));
    LegOperator outer = tensor(braid(u, second), LegOperator::identity(v));
    return compose(outer, inner);
  }
  if (second.size() > 1) {
    // c_{U,V⊗W} = (id_V ⊗ c_{U,W})(c_{U,V} ⊗ id_W)
    Legs v{second.front()}, w(second.begin() + 1, second.end());
    LegOperator inner = tensor(braid(first, v), LegOperator::identity(w));
    LegOperator outer = tensor(LegOperator::identity(v), braid(first, w));
    return compose(outer, inner);
  }
  throw BraidingError("no braiding entry for (" + first.front().id + ", " + second.front().id +
                      ")");
}

std::shared_ptr<ExplicitBraiding> ExplicitBraiding::tabulate(const BraidingProvider& source,
                                                             const std::vector<Legs>& objects) {
  auto out = std::make_shared<ExplicitBraiding>();
  for (const auto& h : objects)
    for (const auto& k : objects) out->set(source.braid(h, k), static_cast<int>(h.size()));
  return out;
}

LegOperator ReversedBraiding::braid(const Legs& first, const Legs& second) const {
  return adjoint(inner_->braid(second, first));
}

Braiding reversed(const Braiding& braiding) {
  if (auto r = std::dynamic_pointer_cast<const ReversedBraiding>(braiding)) return r->inner();
  if (braiding->kind() == "flip") return braiding;
  return std::make_shared<ReversedBraiding>(braiding);
}

HexagonReport check_hexagons(const BraidingProvider& braiding, const std::vector<Space>& spaces,
                             double tol) {
  HexagonReport r;
  for (const auto& u : spaces)
    for (const auto& v : spaces)
      for (const auto& w : spaces) {
        Legs U{u}, V{v}, W{w};
        LegOperator lhs1 = braiding.braid(U, Legs{v, w});
        LegOperator rhs1 = compose(tensor(LegOperator::identity(V), braiding.braid(U, W)),
                                   tensor(braiding.braid(U, V), LegOperator::identity(W)));
        LegOperator lhs2 = braiding.braid(Legs{u, v}, W);
        LegOperator rhs2 = compose(tensor(braiding.braid(U, W), LegOperator::identity(V)),
                                   tensor(LegOperator::identity(U), braiding.braid(V, W)));
        r.max_residual = std::max({r.max_residual, hs_distance(lhs1, rhs1),
                                   hs_distance(lhs2, rhs2)});
        // (c_{V,W} ⊗ id)(id ⊗ c_{U,W})(c_{U,V} ⊗ id) = (id ⊗ c_{U,V})(c_{U,W} ⊗ id)(id ⊗ c_{V,W})
        LegOperator left = compose(
            tensor(braiding.braid(V, W), LegOperator::identity(U)),
            compose(tensor(LegOperator::identity(V), braiding.braid(U, W)),
                    tensor(braiding.braid(U, V), LegOperator::identity(W))));
        LegOperator right = compose(
            tensor(LegOperator::identity(W), braiding.braid(U, V)),
            compose(tensor(braiding.braid(U, W), LegOperator::identity(V)),
                    tensor(LegOperator::identity(U), braiding.braid(V, W))));
        r.yang_baxter_residual = std::max(r.yang_baxter_residual, hs_distance(left, right));
      }
  r.pass = r.max_residual < tol && r.yang_baxter_residual < tol;
  return r;
}

NaturalityReport check_naturality(const BraidingProvider& braiding,
                                  const std::vector<LegOperator>& morphisms, double tol) {
  NaturalityReport r;
  for (const auto& f : morphisms)
    for (const auto& g : morphisms) {
      LegOperator lhs = compose(braiding.braid(f.codomain(), g.codomain()), tensor(f, g));
      LegOperator rhs = compose(tensor(g, f), braiding.braid(f.domain(), g.domain()));
      r.max_residual = std::max(r.max_residual, hs_distance(lhs, rhs));
    }
  r.pass = r.max_residual < tol;
  return r;
}

BraidingRegularityReport crossing_regularity(const LegOperator& c) {
  if (c.domain().size() != 2 || c.codomain().size() != 2)
    throw SignatureError("crossing regularity expects an operator H⊗K -> K⊗H");
  BraidingRegularityReport r;
  r.full = c.domain()[0].dim * c.domain()[1].dim;
  r.right_rank = span_from_slices(c, SliceSide::right).rank();
  r.left_rank = span_from_slices(c, SliceSide::left).rank();
  r.semi_regular = r.right_rank == r.full;
  r.regular = r.semi_regular;
  r.bi_regular = r.regular && r.left_rank == r.full;
  return r;
}

BraidingRegularityReport braiding_regularity(const BraidingProvider& braiding, const Space& h,
                                             const Space& k) {
  return crossing_regularity(braiding.braid(h, k));
}

bool preserves_degree(const LegOperator& x, int modulus, double tol) {
  if (modulus == 0) return true;
  const Matrix& m = x.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (std::abs(m(i, j)) <= tol) continue;
      int di = total_degree(x.codomain(), static_cast<int>(i));
      int dj = total_degree(x.domain(), static_cast<int>(j));
      if (((di - dj) % modulus + modulus) % modulus != 0) return false;
    }
  return true;
}

}  // namespace bmu
