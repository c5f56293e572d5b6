#pragma once

#include <string>
#include <vector>

#include "bmu/mult_unitary.hpp"
#include "bmu/yd.hpp"

namespace bmu {

/// A finite group given by its Cayley table: table[a][b] = index of a·b.
class FiniteGroup {
 public:
  FiniteGroup() = default;
  /// Validates closure, identity, inverses and associativity; throws GroupError.
  FiniteGroup(std::vector<std::vector<int>> table, int identity);

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inverse(int a) const { return inverse_[a]; }
  const std::vector<std::vector<int>>& table() const { return table_; }

 private:
  std::vector<std::vector<int>> table_;
  int identity_ = 0;
  std::vector<int> inverse_;
};

FiniteGroup cyclic_group(int n);
/// Permutations of k points in lexicographic order; index 0 is the identity.
FiniteGroup symmetric_group(int k);

/// W(δ_g⊗δ_h) = δ_g⊗δ_{gh} on ℂ[G]⊗ℂ[G] with the flip braiding.
MultUnitary kac_takesaki(const FiniteGroup& g, const std::string& space_id = "L");

struct GradedCategory {
  std::vector<Space> spaces;
  Braiding braiding;
};

struct GradedSpaceSpec {
  std::string id;
  std::vector<int> grading;
};

/// Spaces with the given gradings and the phase braiding q = exp(2πi/m).
GradedCategory graded_category(int modulus, const std::vector<GradedSpaceSpec>& spaces);

/// U = id, V = id.
YDModule trivial_yd_module(const MultUnitary& f, const Space& h);

/// Module over kac_takesaki(G): U(ξ⊗δ_h) = ξ⊗δ_{gh} for ξ of degree g and
/// V(δ_g⊗ξ) = δ_g⊗π(g)ξ. `grading` assigns a group element to each basis
/// vector of h and `action[g]` is the unitary π(g).
YDModule group_yd_module(const FiniteGroup& g, const MultUnitary& w, const Space& h,
                         const std::vector<int>& grading, const std::vector<Matrix>& action,
                         double tol = 1e-12);

/// The ℤ₂ module on ℂ² with grading (0,1) and π(1) = diag(1,−1). The space
/// also carries the integer grading (0,1), so it doubles as ℂ^{1|1}.
YDModule z2_sign_module(const MultUnitary& w, const std::string& id = "H");

}  // namespace bmu
