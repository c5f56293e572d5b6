#pragma once

// Dense leg calculus. An operator carries an ordered list of domain legs and
// codomain legs; its matrix uses the "first leg most significant" multi-index
// convention for both rows and columns. Leg positions in this API are 1-based
// so that embed_adjacent(F, {L, L, L}, 2) is the leg-notation F_23.

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "bmu/errors.hpp"

namespace bmu {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

class BraidingProvider;

/// A finite-dimensional Hilbert space with an optional integer degree per
/// basis vector. Spaces compare equal when id, dimension and grading agree.
struct Space {
  std::string id;
  int dim = 1;
  std::optional<std::vector<int>> grading;

  Space() = default;
  Space(std::string id, int dim, std::optional<std::vector<int>> grading = std::nullopt);

  bool graded() const { return grading.has_value(); }
  /// Degree of a basis vector; throws BraidingError on ungraded spaces.
  int degree(int basis_index) const;

  friend bool operator==(const Space&, const Space&) = default;
};

using Legs = std::vector<Space>;

/// Product of leg dimensions (1 for an empty list).
int total_dim(const Legs& legs);
std::string describe(const Legs& legs);
/// Degree of a multi-index basis vector: the sum of per-leg degrees.
int total_degree(const Legs& legs, int flat_index);
/// Collapses several legs into one space with the same basis order.
/// Gradings add up; an ungraded input leg yields an ungraded result.
Space fuse(const Legs& legs, std::string id);

struct Vector {
  Space space;
  CVector entries;
};

class LegOperator {
 public:
  LegOperator() = default;
  LegOperator(Legs domain, Legs codomain, Matrix matrix);

  static LegOperator identity(const Legs& legs);
  static LegOperator zero(const Legs& domain, const Legs& codomain);

  const Legs& domain() const { return domain_; }
  const Legs& codomain() const { return codomain_; }
  const Matrix& matrix() const { return matrix_; }
  bool is_endomorphism() const { return domain_ == codomain_; }

  /// Same matrix with different leg labels (dimensions must match).
  LegOperator relabeled(Legs domain, Legs codomain) const;

 private:
  Legs domain_;
  Legs codomain_;
  Matrix matrix_;
};

/// x∘y; requires codomain(y) == domain(x).
LegOperator compose(const LegOperator& x, const LegOperator& y);
/// Kronecker product, legs of x first.
LegOperator tensor(const LegOperator& x, const LegOperator& y);
LegOperator adjoint(const LegOperator& x);
LegOperator scale(const LegOperator& x, cplx factor);
LegOperator add(const LegOperator& x, const LegOperator& y);
LegOperator subtract(const LegOperator& x, const LegOperator& y);

double hs_norm(const Matrix& m);
double hs_norm(const LegOperator& x);
/// ‖x − y‖_HS; requires identical signatures.
double hs_distance(const LegOperator& x, const LegOperator& y);

/// id ⊗ x ⊗ id on `context`. x's domain legs must equal the context legs
/// starting at `start`; the codomain takes x's codomain legs in that slot.
LegOperator embed_adjacent(const LegOperator& x, const Legs& context, int start);

enum class Route { over, under };
const char* to_string(Route route);

/// A run of consecutive legs, 1-based.
struct LegBlock {
  int start = 1;
  int count = 1;
};

/// Places x, acting on two separated blocks, into `context` by braiding the
/// legs between the blocks past the first block. With intermediate block M
/// and first block A (x mapping A⊗B to A'⊗B'):
///   over:  c_{M,A'} · (id_M ⊗ x) · c_{M,A}^{-1}
///   under: c_{A',M}^{-1} · (id_M ⊗ x) · c_{A,M}
/// Adjacent blocks reduce to embed_adjacent.
LegOperator apply_distant(const LegOperator& x, const Legs& context, LegBlock first,
                          LegBlock second, Route route, const BraidingProvider& braiding);
LegOperator apply_distant(const LegOperator& x, const Legs& context, int i, int k, Route route,
                          const BraidingProvider& braiding);

struct Extraction {
  LegOperator op;
  double residual = 0.0;
};

/// Least-squares inverse of apply_distant: the endomorphism z of the two
/// blocks minimizing ‖y − apply_distant(z)‖_HS, together with that residual.
Extraction extract_distant(const LegOperator& y, const Legs& context, LegBlock first,
                           LegBlock second, Route route, const BraidingProvider& braiding);
Extraction extract_distant(const LegOperator& y, const Legs& context, int i, int k, Route route,
                           const BraidingProvider& braiding);

/// max(‖x*x − 1‖, ‖xx* − 1‖) in HS norm; throws on non-square total dims.
double unitarity_defect(const LegOperator& x);
bool is_unitary(const LegOperator& x, double tol);

/// Pairs leg `position` (1-based, present in both domain and codomain) with
/// ⟨e_bra| on the codomain side and |e_ket⟩ on the domain side.
LegOperator slice(const LegOperator& x, int position, int bra, int ket);

/// Trace over every leg outside the contiguous block [start, start+count) of
/// an operator whose domain and codomain have the same leg dimensions.
/// Unlike the leg positions above, `start` is a 0-based index into `dims`.
Matrix partial_trace_keep(const Matrix& m, const std::vector<int>& dims, int start, int count);

/// Row-major flattening of a matrix and its inverse.
CVector vec(const Matrix& m);
Matrix unvec(const CVector& v, int rows, int cols);

}  // namespace bmu
