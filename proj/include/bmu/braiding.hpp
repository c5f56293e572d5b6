#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bmu/tensor_core.hpp"

namespace bmu {

/// Assigns a unitary c_{H,K}: H⊗K → K⊗H to ordered pairs of (possibly
/// composite) objects, given as leg lists.
class BraidingProvider {
 public:
  virtual ~BraidingProvider() = default;

  virtual LegOperator braid(const Legs& first, const Legs& second) const = 0;
  LegOperator braid(const Space& h, const Space& k) const { return braid(Legs{h}, Legs{k}); }
  /// c_{H,K}^{-1}: K⊗H → H⊗K.
  LegOperator braid_inverse(const Legs& first, const Legs& second) const {
    return adjoint(braid(first, second));
  }

  virtual std::string kind() const = 0;
  /// Degrees are compared modulo this number when deciding whether an
  /// operator is a morphism; 0 means no grading constraint.
  virtual int grading_modulus() const { return 0; }
};

using Braiding = std::shared_ptr<const BraidingProvider>;

/// c(h⊗k) = k⊗h.
Braiding make_flip();
/// c(h⊗k) = q^{deg h · deg k} k⊗h with q = exp(2πi/m). m = 1 is the flip.
Braiding make_phase(int modulus);

/// Table-driven braiding keyed by the ids of the leg lists. Pairs without an
/// entry are assembled from smaller entries through the hexagon identities;
/// an empty leg list braids trivially.
class ExplicitBraiding : public BraidingProvider {
 public:
  using Key = std::pair<std::vector<std::string>, std::vector<std::string>>;

  /// Stores c_{H,K}; `first_legs` is the number of legs of H (may be
  /// omitted for single-leg objects).
  void set(const LegOperator& c, int first_legs = -1);
  bool has(const Legs& first, const Legs& second) const;
  const std::map<Key, LegOperator>& entries() const { return entries_; }

  LegOperator braid(const Legs& first, const Legs& second) const override;
  std::string kind() const override { return "explicit"; }

  /// Tabulates `source` on every ordered pair of the given objects.
  static std::shared_ptr<ExplicitBraiding> tabulate(const BraidingProvider& source,
                                                    const std::vector<Legs>& objects);

 private:
  std::map<Key, LegOperator> entries_;
};

/// The braiding of the reversed category: c'_{H,K} = c_{K,H}^{-1}.
class ReversedBraiding : public BraidingProvider {
 public:
  explicit ReversedBraiding(Braiding inner) : inner_(std::move(inner)) {}
  LegOperator braid(const Legs& first, const Legs& second) const override;
  std::string kind() const override { return "reversed(" + inner_->kind() + ")"; }
  int grading_modulus() const override { return inner_->grading_modulus(); }
  const Braiding& inner() const { return inner_; }

 private:
  Braiding inner_;
};

/// Reversal that unwraps a doubly reversed provider.
Braiding reversed(const Braiding& braiding);

struct HexagonReport {
  double max_residual = 0.0;     // both hexagon identities, all triples
  double yang_baxter_residual = 0.0;
  bool pass = false;
};

HexagonReport check_hexagons(const BraidingProvider& braiding, const std::vector<Space>& spaces,
                             double tol);

struct NaturalityReport {
  double max_residual = 0.0;
  bool pass = false;
};

/// max ‖c_{H',K'}(f⊗g) − (g⊗f)c_{H,K}‖ over all ordered pairs (f, g).
NaturalityReport check_naturality(const BraidingProvider& braiding,
                                  const std::vector<LegOperator>& morphisms, double tol);

struct BraidingRegularityReport {
  int right_rank = 0;
  int left_rank = 0;
  int full = 0;
  bool semi_regular = false;
  bool regular = false;
  bool bi_regular = false;
};

/// Slice ranks of an arbitrary operator H⊗K → K⊗H, the common core of the
/// braiding and YD-braiding regularity checks.
BraidingRegularityReport crossing_regularity(const LegOperator& c);
BraidingRegularityReport braiding_regularity(const BraidingProvider& braiding, const Space& h,
                                             const Space& k);

/// True when the operator maps each homogeneous vector into vectors of the
/// same total degree modulo `modulus` (always true for modulus 0).
bool preserves_degree(const LegOperator& x, int modulus, double tol = 1e-12);

}  // namespace bmu
