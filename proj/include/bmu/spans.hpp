#pragma once

#include <vector>

#include "bmu/braiding.hpp"
#include "bmu/tensor_core.hpp"

namespace bmu {

/// Singular values below this fraction of the largest one count as zero.
inline constexpr double kRankCutoff = 1e-9;

/// Orthonormal (Hilbert-Schmidt) basis of a space of operators domain → codomain.
/// Internally each basis element is stored as its row-major vectorization,
/// one column per element.
class OperatorSpan {
 public:
  OperatorSpan() = default;
  /// `columns` must already be orthonormal.
  OperatorSpan(Legs domain, Legs codomain, Matrix columns);

  static OperatorSpan from_generators(const Legs& domain, const Legs& codomain,
                                      const std::vector<Matrix>& generators);
  static OperatorSpan from_generators(const Legs& domain, const Legs& codomain,
                                      const std::vector<LegOperator>& generators);
  static OperatorSpan full(const Legs& domain, const Legs& codomain);
  static OperatorSpan scalars(const Legs& legs);

  const Legs& domain() const { return domain_; }
  const Legs& codomain() const { return codomain_; }
  int rank() const { return static_cast<int>(columns_.cols()); }
  const Matrix& columns() const { return columns_; }
  Matrix element_matrix(int i) const;
  LegOperator element(int i) const;
  std::vector<LegOperator> basis() const;
  /// ‖QᴴQ − 1‖ for the stored basis.
  double gram_residual() const;

 private:
  Legs domain_;
  Legs codomain_;
  Matrix columns_;
};

/// Orthonormal basis of the column space of `a` (columns are normalized
/// before the rank decision, zero columns are dropped).
Matrix orthonormal_columns(const Matrix& a);

enum class SliceSide { right, left };

/// Right: (id⊗⟨e_i|)X(id⊗|e_j⟩); left: bras and kets on the first leg.
OperatorSpan span_from_slices(const LegOperator& x, SliceSide side);
/// Same span computed from the functionals ⟨u_i|·|v_j⟩ of other orthonormal
/// bases (columns of the unitaries u and v) of the sliced leg.
OperatorSpan span_from_slices(const LegOperator& x, SliceSide side, const Matrix& bra_basis,
                              const Matrix& ket_basis);

bool contains(const OperatorSpan& s, const LegOperator& x, double tol);
/// Spectral-norm distance of the orthogonal projections; 1 when ranks differ.
/// ‖X − P(X)‖_HS with P the projector onto the span.
double residual_norm(const OperatorSpan& s, const LegOperator& x);
double projector_distance(const OperatorSpan& a, const OperatorSpan& b);
bool equals(const OperatorSpan& a, const OperatorSpan& b, double tol);
/// a ⊆ b up to tol.
bool is_subspace(const OperatorSpan& a, const OperatorSpan& b, double tol);

OperatorSpan product_span(const OperatorSpan& s1, const OperatorSpan& s2);
OperatorSpan adjoint_span(const OperatorSpan& s);

bool is_algebra(const OperatorSpan& s, double tol);
bool is_star_closed(const OperatorSpan& s, double tol);
bool is_nondegenerate(const OperatorSpan& s, double tol);

/// Null space of a linear map on operators domain → codomain, given as a
/// matrix acting on row-major vectorizations.
OperatorSpan kernel_of_linear_map(const Matrix& t, const Legs& domain, const Legs& codomain);

/// hbt: α(a) = c_{H2,H1}(id⊗a)c⁻¹_{H2,H1}, β(b) = id⊗b
/// habt: α(a) = c⁻¹_{H1,H2}(id⊗a)c_{H1,H2}, β(b) = id⊗b
/// bt: α(a) = a⊗id, β(b) = c⁻¹_{H1,H2}(b⊗id)c_{H1,H2}
enum class CrossVariant { hbt, habt, bt };
const char* to_string(CrossVariant v);

LegOperator cross_alpha(const LegOperator& a, const Legs& h2, CrossVariant variant,
                        const BraidingProvider& braiding);
LegOperator cross_beta(const LegOperator& b, const Legs& h1, CrossVariant variant,
                       const BraidingProvider& braiding);

OperatorSpan crossed_product(const OperatorSpan& s1, const OperatorSpan& s2,
                             const BraidingProvider& braiding, CrossVariant variant);
/// span{α(a)β(b)} == span{β(b)α(a)}.
bool crossed_product_commutation_check(const OperatorSpan& s1, const OperatorSpan& s2,
                                       const BraidingProvider& braiding, CrossVariant variant,
                                       double tol);

/// X·b and b·X lie in S for every basis element b.
bool relative_multiplier_contains(const OperatorSpan& s, const LegOperator& x, double tol);

enum class AuxSide { left, right };

/// The morphism a ↦ V(id_aux ⊗ a)V* (aux on the left) or V(a ⊗ id_aux)V*.
struct Conjugator {
  LegOperator v;
  Legs aux;
  AuxSide side = AuxSide::left;

  LegOperator apply(const LegOperator& a) const;
  /// Target legs for an argument on `h`.
  static Conjugator identity(const Legs& h);
};

/// Crossed product with a cached decomposition of its generating products
/// α(a_i)β(b_j), a_i and b_j running through the bases of the factors.
class CrossedProduct {
 public:
  CrossedProduct(OperatorSpan s1, OperatorSpan s2, Braiding braiding, CrossVariant variant);

  const OperatorSpan& span() const { return span_; }
  const OperatorSpan& first() const { return s1_; }
  const OperatorSpan& second() const { return s2_; }

  /// Least-squares coefficients c (r1 × r2) of x and the relative residual.
  std::pair<Matrix, double> decompose(const LegOperator& x) const;

  /// Σ c_ij α'(f(a_i))β'(g(b_j)) for each x. Throws DecompositionError when an
  /// x is outside the crossed product or when the rule is not well defined
  /// on the relations among the generating products.
  std::vector<LegOperator> extend(const Conjugator& f, const Conjugator& g,
                                  const std::vector<LegOperator>& xs, double tol) const;

 private:
  OperatorSpan s1_, s2_;
  Braiding braiding_;
  CrossVariant variant_;
  Legs h1_, h2_;
  Matrix generators_;  // vectorized α(a_i)β(b_j), column i*r2 + j
  Matrix u_, v_;       // thin SVD factors restricted to the numerical rank
  Eigen::VectorXd sigma_;
  Matrix null_;        // relations among the generating products
  OperatorSpan span_;
};

LegOperator extend_on_crossed_product(const Conjugator& f, const Conjugator& g,
                                      const OperatorSpan& s1, const OperatorSpan& s2,
                                      const Braiding& braiding, CrossVariant variant,
                                      const LegOperator& x, double tol);

}  // namespace bmu
