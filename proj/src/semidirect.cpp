#include "bmu/semidirect.hpp"

#include <cmath>

namespace bmu {

namespace {

void require_fusable(const BraidingProvider& c) {
  const std::string k = c.kind();
  if (k != "flip" && k != "phase")
    throw BraidingError("semi-direct products need a flip or phase ambient braiding, got " + k);
}

}  // namespace

FixedVectorSpace fixed_vectors(const MultUnitary& w) {
  const int d = w.space().dim;
  const Matrix wm = w.op().matrix() - Matrix::Identity(d * d, d * d);
  // Row block j holds e ↦ (W − 1)(e⊗ξ_j).
  Matrix t(static_cast<Eigen::Index>(d) * d * d, d);
  for (int j = 0; j < d; ++j) {
    Matrix embed = Matrix::Zero(d * d, d);
    for (int i = 0; i < d; ++i) embed(i * d + j, i) = 1.0;
    t.middleRows(static_cast<Eigen::Index>(j) * d * d, d * d) = wm * embed;
  }
  Eigen::BDCSVD<Matrix> svd(t, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double scale = std::max(1.0, sv.size() ? sv(0) : 0.0);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > kRankCutoff * scale) ++rank;
  FixedVectorSpace out{w.space(), {}};
  for (int k = rank; k < d; ++k) out.basis.push_back(Vector{w.space(), svd.matrixV().col(k)});
  return out;
}

double fixed_vector_residual(const MultUnitary& w, const CVector& e) {
  const int d = w.space().dim;
  double worst = 0.0;
  for (int j = 0; j < d; ++j) {
    CVector xi = CVector::Zero(d);
    xi(j) = 1.0;
    CVector v(d * d);
    for (int i = 0; i < d; ++i) v.segment(i * d, d) = e(i) * xi;
    worst = std::max(worst, (w.op().matrix() * v - v).norm());
  }
  return worst;
}

LegOperator semidirect_operator(const MultUnitary& w, const YDModule& module,
                                const MultUnitary& f, Route w_route, Route f_route) {
  if (module.h.size() != 1 || module.h[0] != f.space())
    throw SignatureError("the YD module must live on the space of F");
  const Space& k = w.space();
  const Space& l = f.space();
  const Legs ctx{k, l, k, l};
  const BraidingProvider& c = *w.braiding();
  const LegOperator w13 = apply_distant(w.op(), ctx, 1, 3, w_route, c);
  const LegOperator u23 = embed_adjacent(module.u, ctx, 2);
  const LegOperator v34 = embed_adjacent(module.v, ctx, 3);
  const LegOperator f24 = apply_distant(f.op(), ctx, 2, 4, f_route, c);
  return compose(w13, compose(u23, compose(adjoint(v34), compose(f24, v34))));
}

MultUnitary semidirect_product(const MultUnitary& w, const YDModule& module, const MultUnitary& f,
                               double tol, const std::string& space_id) {
  require_fusable(*w.braiding());
  const double ry = yd_residual(module, w);
  if (ry > tol) throw CertificateError("module fails the YD identity over W", ry);
  const double rf = pentagon_residual(f);
  if (rf > tol) throw CertificateError("F fails the braided Pentagon equation", rf);
  const LegOperator x = semidirect_operator(w, module, f);
  const Space kl = fuse(Legs{w.space(), f.space()}, space_id);
  MultUnitary out(kl, x.relabeled(Legs{kl, kl}, Legs{kl, kl}), w.braiding());
  const double rp = pentagon_residual(out);
  if (rp > tol) throw CertificateError("semi-direct product fails the Pentagon equation", rp);
  return out;
}

OperatorSpan compress_span(const OperatorSpan& s, const CVector& e, const Space& l) {
  const int dk = static_cast<int>(e.size()), dl = l.dim;
  if (total_dim(s.domain()) != dk * dl || total_dim(s.codomain()) != dk * dl)
    throw SignatureError("compression: span does not act on K⊗L");
  Matrix iso = Matrix::Zero(dk * dl, dl);  // |e⟩⊗1
  for (int i = 0; i < dk; ++i) iso.middleRows(i * dl, dl) = e(i) * Matrix::Identity(dl, dl);
  std::vector<Matrix> gens;
  for (int i = 0; i < s.rank(); ++i) gens.push_back(iso.adjoint() * s.element_matrix(i) * iso);
  return OperatorSpan::from_generators(Legs{l}, Legs{l}, gens);
}

SemidirectReport semidirect_regularity_check(const MultUnitary& w, const YDModule& module,
                                             const MultUnitary& f, double tol) {
  SemidirectReport r;
  const MultUnitary wf = semidirect_product(w, module, f, tol);
  r.pentagon_residual = pentagon_residual(wf);
  r.unitarity_defect = unitarity_defect(wf.op());
  r.route_discrepancy =
      hs_distance(semidirect_operator(w, module, f, Route::over, Route::under),
                  semidirect_operator(w, module, f, Route::under, Route::over));
  const OperatorSpan c = C_span(wf);
  r.rank_C = c.rank();
  r.full = wf.space().dim * wf.space().dim;
  r.regular = r.rank_C == r.full;
  const OperatorSpan cf = C_span(f);
  r.f_regular = cf.rank() == f.space().dim * f.space().dim;
  const FixedVectorSpace fv = fixed_vectors(w);
  r.fixed_dim = fv.dim();
  if (fv.dim() > 0) {
    const OperatorSpan comp = compress_span(c, fv.basis.front().entries, f.space());
    r.compression_rank = comp.rank();
    r.compression_distance = projector_distance(comp, cf);
  }
  return r;
}

}  // namespace bmu
