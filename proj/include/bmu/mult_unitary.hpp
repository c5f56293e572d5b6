#pragma once

#include <limits>
#include <string>
#include <vector>

#include "bmu/braiding.hpp"
#include "bmu/spans.hpp"

namespace bmu {

inline constexpr double kDefaultTol = 1e-9;

/// A unitary F on L⊗L in a braided category. Unitarity is not enforced at
/// construction so that defective inputs can still be analyzed.
class MultUnitary {
 public:
  MultUnitary(Space l, LegOperator f, Braiding braiding);

  const Space& space() const { return l_; }
  Legs legs() const { return Legs{l_, l_}; }
  const LegOperator& op() const { return f_; }
  const Braiding& braiding() const { return braiding_; }
  /// c_{L,L}
  LegOperator crossing() const { return braiding_->braid(l_, l_); }

 private:
  Space l_;
  LegOperator f_;
  Braiding braiding_;
};

/// ‖F23 F12 − F12 c12 F23 c⁻¹12 F23‖ on L⊗L⊗L.
double pentagon_residual(const MultUnitary& m);

OperatorSpan hatA(const MultUnitary& m);
OperatorSpan A_span(const MultUnitary& m);
/// Right slices of c⁻¹∘F.
OperatorSpan C_span(const MultUnitary& m);
/// Left slices of c∘F*.
OperatorSpan D_span(const MultUnitary& m);

/// F̂ = c⁻¹ F* c with the reversed braiding.
MultUnitary dual(const MultUnitary& m);

/// Dimension of {a : F(a⊗1)F* = c(a⊗1)c⁻¹}.
int goodness(const MultUnitary& m);

struct RegularityReport {
  int rank_C = 0;
  int rank_D = 0;
  int full = 0;
  int goodness_dim = 0;
  bool good = false;
  bool semi_regular = false;
  bool regular = false;
  bool bi_regular = false;
  bool dual_consistent = false;
};

RegularityReport regularity_classify(const MultUnitary& m);

/// op: F*(1⊗a)F; std: c·op(a)·c⁻¹; right: F(a⊗1)F*.
enum class Comult { op, std, right };
LegOperator comult(const MultUnitary& m, const LegOperator& a, Comult variant);

/// The morphism behind each comultiplication, for extensions over crossed products.
Conjugator comult_conjugator(const MultUnitary& m, Comult variant);

struct PodlesResult {
  bool right = false;  // products with the first factor
  bool left = false;   // products with the second factor
  int rank_target = 0;
};

/// Â side: [Δ̂ᵒᵖ(Â)·α(Â)] and [Δ̂ᵒᵖ(Â)·β(Â)] against Â ⊠̃ Â, in both
/// product orders. The `left_algebra` variant runs the same test for Δ on
/// A(F) against A ⊠ A.
PodlesResult podles_check(const MultUnitary& m, double tol);
PodlesResult podles_check_left_algebra(const MultUnitary& m, double tol);

/// max over basis elements a of ‖(Δ ⊠ id)Δ(a) − (id ⊠ Δ)Δ(a)‖.
double coassoc_check(const MultUnitary& m, double tol);
double coassoc_check_left_algebra(const MultUnitary& m, double tol);

struct MultiplierResult {
  bool multiplier = false;
  bool sandwich = false;
  int rank_target = 0;
  int rank_sandwich = 0;
  double distance = 1.0;
};

/// F against Â(F) ⊠̂ Â(F̂): relative multiplier membership and the sandwich
/// span [α(Â(F)) F β(Â(F̂))].
MultiplierResult multiplier_theorem_check(const MultUnitary& m, double tol);
/// F against A(F̂) ⊠ A(F) with the sandwich [(x⊗1) F c⁻¹(y⊗1)c].
MultiplierResult multiplier_theorem_check_left_algebra(const MultUnitary& m, double tol);

struct Check {
  std::string name;
  double value = 0.0;      // NaN when the quantity could not be computed
  std::string relation;    // "<", "==" or ">="
  double threshold = 0.0;
  bool pass = false;
  double wall_time_s = 0.0;
};

/// Evaluates `relation` on the recorded numbers; NaN never passes.
bool check_passes(double value, const std::string& relation, double threshold);

struct BialgebraCertificate {
  bool podles_right = false;
  bool podles_left = false;
  double coassoc_residual = std::numeric_limits<double>::quiet_NaN();
  bool multiplier_ok = false;
  bool span_equality_ok = false;
};

struct Certificate {
  std::vector<Check> checks;
  RegularityReport regularity;
  BialgebraCertificate bialgebra;
  bool all_pass() const;
  const Check* find(const std::string& name) const;
};

Certificate full_certificate(const MultUnitary& m, double tol = kDefaultTol);

/// Unitarity and Pentagon only, the gate used for solver output.
Certificate pentagon_certificate(const MultUnitary& m, double tol);

}  // namespace bmu
