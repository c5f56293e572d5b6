#pragma once

#include <string>
#include <vector>

#include "bmu/mult_unitary.hpp"
#include "bmu/yd.hpp"

namespace bmu {

/// Orthonormal basis of {e : W(e⊗ξ) = e⊗ξ for all ξ}.
struct FixedVectorSpace {
  Space space;
  std::vector<Vector> basis;
  int dim() const { return static_cast<int>(basis.size()); }
};

FixedVectorSpace fixed_vectors(const MultUnitary& w);

/// max over basis ξ of ‖W(e⊗ξ) − e⊗ξ‖.
double fixed_vector_residual(const MultUnitary& w, const CVector& e);

/// The operator on (K, L̆, K, L̆) with the two crossings routed as given.
LegOperator semidirect_operator(const MultUnitary& w, const YDModule& module,
                                const MultUnitary& f, Route w_route = Route::over,
                                Route f_route = Route::under);

/// W⋉F as a multiplicative unitary on the fused space K⊗L̆ in the ambient
/// category of W. The module must live on F's space, W's braiding must be flip
/// or phase (so that it acts on fused spaces), and the inputs are checked:
/// yd_residual(module, W) and pentagon_residual(F) must be below tol.
/// Throws CertificateError when the result fails the Pentagon equation.
MultUnitary semidirect_product(const MultUnitary& w, const YDModule& module,
                               const MultUnitary& f, double tol = 1e-10,
                               const std::string& space_id = "KL");

struct SemidirectReport {
  double pentagon_residual = 0.0;
  double unitarity_defect = 0.0;
  /// ‖(over, under) − (under, over)‖ over the two crossings.
  double route_discrepancy = 0.0;
  int rank_C = 0;
  int full = 0;
  bool regular = false;
  bool f_regular = false;
  int fixed_dim = 0;
  /// Projector distance between C(F) and the compression of C(W⋉F) by the
  /// first fixed vector; 1 when W has no fixed vectors.
  double compression_distance = 1.0;
  int compression_rank = 0;
};

SemidirectReport semidirect_regularity_check(const MultUnitary& w, const YDModule& module,
                                             const MultUnitary& f, double tol = 1e-10);

/// {(⟨e|⊗1) X (|e⟩⊗1) : X ∈ s} for s on K⊗L̆ given as the fused space, with
/// the result on `l`.
OperatorSpan compress_span(const OperatorSpan& s, const CVector& e, const Space& l);

}  // namespace bmu
