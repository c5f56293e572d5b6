#pragma once

#include <memory>
#include <vector>

#include "bmu/mult_unitary.hpp"

namespace bmu {

/// Right corepresentation: U on H⊗L.
struct Corep {
  Legs h;
  LegOperator u;
};

/// Left representation: V on L⊗H.
struct Rep {
  Legs h;
  LegOperator v;
};

struct YDModule {
  Legs h;
  LegOperator u;  // on H⊗L
  LegOperator v;  // on L⊗H

  Corep corep() const { return Corep{h, u}; }
  Rep rep() const { return Rep{h, v}; }
};

/// ‖F23 U12 − U12 U13 F23‖ on H⊗L⊗L.
double corep_residual(const Corep& c, const MultUnitary& f, Route route = Route::over);
/// ‖V23 F12 − F12 V13 V23‖ on L⊗L⊗H.
double rep_residual(const Rep& r, const MultUnitary& f, Route route = Route::over);
/// ‖V12 F13 U23 − U23 F13 V12‖ on L⊗H⊗L; the two F13 use the given routes.
double yd_residual(const YDModule& m, const MultUnitary& f, Route lhs_route = Route::over,
                   Route rhs_route = Route::under);

/// U1,13 · U2,23 on H1⊗H2⊗L.
Corep tensor_corep(const Corep& a, const Corep& b, const MultUnitary& f, double tol);
/// V1,12 · V2,13 on L⊗H1⊗H2 (routes of the crossing as drawn for representations).
Rep tensor_rep(const Rep& a, const Rep& b, const MultUnitary& f, double tol);
/// V2,13 · V1,12 with V2 passing under H1, the ordering used for YD modules.
Rep tensor_rep_yd_order(const Rep& a, const Rep& b, const MultUnitary& f, double tol);
YDModule tensor_yd(const YDModule& a, const YDModule& b, const MultUnitary& f, double tol);

/// V ∗ U on H⊗K, extracted from U*12 V23 U12 V*23 on H⊗L⊗K. Throws
/// FactorizationError when that operator does not act on the outer legs only.
Extraction vu_extract(const Rep& v, const Corep& u, const MultUnitary& f,
                      Route route = Route::over);
LegOperator vu_product(const Rep& v, const Corep& u, const MultUnitary& f, double tol,
                       Route route = Route::over);

/// Φ_{H,K} = c⁻¹_{K,H} ∘ (V_K ∗ U_H).
LegOperator yd_braiding(const YDModule& h, const YDModule& k, const MultUnitary& f, double tol);

BraidingRegularityReport yd_braiding_regularity(const YDModule& h, const YDModule& k,
                                                const MultUnitary& f, double tol);

/// Slice ranks of c⁻¹_{L,H} ∘ U (full rank expected for regular F).
BraidingRegularityReport corep_slice_regularity(const Corep& c, const MultUnitary& f);

/// Explicit table of Φ on all ordered pairs of the modules, plus the pairs
/// (M_i, M_j⊗M_k) and (M_i⊗M_j, M_k) computed from tensor_yd so that hexagon
/// checks compare independent entries.
std::shared_ptr<ExplicitBraiding> yd_braiding_provider(const std::vector<YDModule>& modules,
                                                       const MultUnitary& f, double tol,
                                                       bool with_composites = true);

/// Matrices a Hermitian generator must commute with for exp(iH) on H⊗H to be
/// a morphism of the YD structure of m⊗m: slices of the tensor corep and rep.
std::vector<Matrix> yd_commutant_constraints(const YDModule& m, const MultUnitary& f, double tol);

}  // namespace bmu
