#include "bmu/spans.hpp"

#include <algorithm>
#include <cmath>

namespace bmu {

namespace {

Legs concat(const Legs& a, const Legs& b) {
  Legs out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

int numerical_rank(const Eigen::VectorXd& sv) {
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  int r = 0;
  while (r < sv.size() && sv(r) > kRankCutoff * sv(0)) ++r;
  return r;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

// a · (I_p ⊗ y)
Matrix times_identity_kron(const Matrix& a, const Matrix& y) {
  const Eigen::Index d = y.rows(), p = a.cols() / d;
  Matrix out(a.rows(), p * y.cols());
  for (Eigen::Index k = 0; k < p; ++k)
    out.middleCols(k * y.cols(), y.cols()).noalias() = a.middleCols(k * d, d) * y;
  return out;
}

// (x ⊗ I_q) · b
Matrix kron_identity_times(const Matrix& x, Eigen::Index q, const Matrix& b) {
  Matrix out = Matrix::Zero(x.rows() * q, b.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      if (x(i, j) == cplx(0.0)) continue;
      out.middleRows(i * q, q) += x(i, j) * b.middleRows(j * q, q);
    }
  return out;
}

std::vector<LegOperator> all_slices(const LegOperator& x, SliceSide side, int& nbra, int& nket) {
  if (x.domain().size() != 2 || x.codomain().size() != 2)
    throw SignatureError("slices need an operator with two domain and two codomain legs");
  const int pos = side == SliceSide::right ? 2 : 1;
  nbra = x.codomain()[pos - 1].dim;
  nket = x.domain()[pos - 1].dim;
  std::vector<LegOperator> out;
  out.reserve(nbra * nket);
  for (int i = 0; i < nbra; ++i)
    for (int j = 0; j < nket; ++j) out.push_back(slice(x, pos, i, j));
  return out;
}

}  // namespace

OperatorSpan::OperatorSpan(Legs domain, Legs codomain, Matrix columns)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), columns_(std::move(columns)) {
  const Eigen::Index n = static_cast<Eigen::Index>(total_dim(domain_)) * total_dim(codomain_);
  if (columns_.size() == 0) columns_.resize(n, 0);
  if (columns_.rows() != n) throw SignatureError("span basis length does not match its legs");
}

Matrix orthonormal_columns(const Matrix& a) {
  std::vector<Eigen::Index> keep;
  double biggest = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) biggest = std::max(biggest, a.col(j).norm());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    if (a.col(j).norm() > 1e-14 * biggest && biggest > 0.0) keep.push_back(j);
  if (keep.empty()) return Matrix(a.rows(), 0);
  Matrix b(a.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) b.col(k) = a.col(keep[k]).normalized();
  Eigen::BDCSVD<Matrix> svd(b, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(numerical_rank(svd.singularValues()));
}

OperatorSpan OperatorSpan::from_generators(const Legs& domain, const Legs& codomain,
                                           const std::vector<Matrix>& generators) {
  const int rows = total_dim(codomain), cols = total_dim(domain);
  Matrix a(static_cast<Eigen::Index>(rows) * cols, static_cast<Eigen::Index>(generators.size()));
  for (std::size_t k = 0; k < generators.size(); ++k) {
    if (generators[k].rows() != rows || generators[k].cols() != cols)
      throw SignatureError("span generator has the wrong shape");
    a.col(k) = vec(generators[k]);
  }
  return OperatorSpan(domain, codomain, orthonormal_columns(a));
}

OperatorSpan OperatorSpan::from_generators(const Legs& domain, const Legs& codomain,
                                           const std::vector<LegOperator>& generators) {
  std::vector<Matrix> ms;
  ms.reserve(generators.size());
  for (const auto& g : generators) {
    if (g.domain() != domain || g.codomain() != codomain)
      throw SignatureError("span generator " + describe(g.domain()) + " -> " +
                           describe(g.codomain()) + " does not match the span signature");
    ms.push_back(g.matrix());
  }
  return from_generators(domain, codomain, ms);
}

OperatorSpan OperatorSpan::full(const Legs& domain, const Legs& codomain) {
  const Eigen::Index n = static_cast<Eigen::Index>(total_dim(domain)) * total_dim(codomain);
  return OperatorSpan(domain, codomain, Matrix::Identity(n, n));
}

OperatorSpan OperatorSpan::scalars(const Legs& legs) {
  const int d = total_dim(legs);
  return from_generators(legs, legs, std::vector<Matrix>{Matrix::Identity(d, d)});
}

Matrix OperatorSpan::element_matrix(int i) const {
  return unvec(columns_.col(i), total_dim(codomain_), total_dim(domain_));
}

LegOperator OperatorSpan::element(int i) const {
  return LegOperator(domain_, codomain_, element_matrix(i));
}

std::vector<LegOperator> OperatorSpan::basis() const {
  std::vector<LegOperator> out;
  for (int i = 0; i < rank(); ++i) out.push_back(element(i));
  return out;
}

double OperatorSpan::gram_residual() const {
  return (columns_.adjoint() * columns_ - Matrix::Identity(rank(), rank())).norm();
}

OperatorSpan span_from_slices(const LegOperator& x, SliceSide side) {
  int nb = 0, nk = 0;
  auto slices = all_slices(x, side, nb, nk);
  return OperatorSpan::from_generators(slices.front().domain(), slices.front().codomain(), slices);
}

OperatorSpan span_from_slices(const LegOperator& x, SliceSide side, const Matrix& bra_basis,
                              const Matrix& ket_basis) {
  int nb = 0, nk = 0;
  auto slices = all_slices(x, side, nb, nk);
  if (bra_basis.rows() != nb || ket_basis.rows() != nk)
    throw SignatureError("functional bases do not match the sliced leg");
  std::vector<Matrix> gens;
  for (Eigen::Index i = 0; i < bra_basis.cols(); ++i)
    for (Eigen::Index j = 0; j < ket_basis.cols(); ++j) {
      Matrix m = Matrix::Zero(slices.front().matrix().rows(), slices.front().matrix().cols());
      for (int k = 0; k < nb; ++k)
        for (int l = 0; l < nk; ++l)
          m += std::conj(bra_basis(k, i)) * ket_basis(l, j) * slices[k * nk + l].matrix();
      gens.push_back(std::move(m));
    }
  return OperatorSpan::from_generators(slices.front().domain(), slices.front().codomain(), gens);
}

bool contains(const OperatorSpan& s, const LegOperator& x, double tol) {
  if (x.domain() != s.domain() || x.codomain() != s.codomain())
    throw SignatureError("operator signature does not match the span");
  CVector v = vec(x.matrix());
  const double n = v.norm();
  if (n == 0.0) return true;
  const Matrix& q = s.columns();
  CVector r = v - q * (q.adjoint() * v);
  return r.norm() < tol * n;
}

double residual_norm(const OperatorSpan& s, const LegOperator& x) {
  if (x.domain() != s.domain() || x.codomain() != s.codomain())
    throw SignatureError("operator signature does not match the span");
  CVector v = vec(x.matrix());
  const Matrix& q = s.columns();
  return (v - q * (q.adjoint() * v)).norm();
}

double projector_distance(const OperatorSpan& a, const OperatorSpan& b) {
  if (a.domain() != b.domain() || a.codomain() != b.codomain())
    throw SignatureError("cannot compare spans with different signatures");
  if (a.rank() != b.rank()) return 1.0;
  if (a.rank() == 0) return 0.0;
  const Matrix& qa = a.columns();
  const Matrix& qb = b.columns();
  Matrix ra = qb - qa * (qa.adjoint() * qb);
  Matrix rb = qa - qb * (qb.adjoint() * qa);
  return std::max(spectral_norm(ra), spectral_norm(rb));
}

bool equals(const OperatorSpan& a, const OperatorSpan& b, double tol) {
  return a.rank() == b.rank() && projector_distance(a, b) < tol;
}

bool is_subspace(const OperatorSpan& a, const OperatorSpan& b, double tol) {
  if (a.domain() != b.domain() || a.codomain() != b.codomain())
    throw SignatureError("cannot compare spans with different signatures");
  if (a.rank() == 0) return true;
  const Matrix& qa = a.columns();
  const Matrix& qb = b.columns();
  return spectral_norm(qa - qb * (qb.adjoint() * qa)) < tol;
}

OperatorSpan product_span(const OperatorSpan& s1, const OperatorSpan& s2) {
  if (s1.domain() != s2.codomain())
    throw SignatureError("product span: spans are not composable");
  std::vector<Matrix> gens;
  gens.reserve(static_cast<std::size_t>(s1.rank()) * s2.rank());
  std::vector<Matrix> b2;
  for (int j = 0; j < s2.rank(); ++j) b2.push_back(s2.element_matrix(j));
  for (int i = 0; i < s1.rank(); ++i) {
    Matrix a = s1.element_matrix(i);
    for (const auto& b : b2) gens.push_back(a * b);
  }
  return OperatorSpan::from_generators(s2.domain(), s1.codomain(), gens);
}

OperatorSpan adjoint_span(const OperatorSpan& s) {
  std::vector<Matrix> gens;
  for (int i = 0; i < s.rank(); ++i) gens.push_back(s.element_matrix(i).adjoint());
  return OperatorSpan::from_generators(s.codomain(), s.domain(), gens);
}

bool is_algebra(const OperatorSpan& s, double tol) {
  if (s.domain() != s.codomain()) throw SignatureError("algebra check needs an endomorphism span");
  // Basis elements have unit norm, so ‖ab‖ ≤ 1 sets the scale.
  auto basis = s.basis();
  for (const auto& a : basis)
    for (const auto& b : basis)
      if (residual_norm(s, compose(a, b)) >= tol) return false;
  return true;
}

bool is_star_closed(const OperatorSpan& s, double tol) {
  if (s.domain() != s.codomain()) throw SignatureError("star check needs an endomorphism span");
  for (const auto& a : s.basis())
    if (residual_norm(s, adjoint(a)) >= tol) return false;
  return true;
}

bool is_nondegenerate(const OperatorSpan& s, double tol) {
  (void)tol;
  const int d = total_dim(s.codomain());
  if (s.rank() == 0) return false;
  const int cols = total_dim(s.domain());
  Matrix all(d, static_cast<Eigen::Index>(cols) * s.rank());
  for (int i = 0; i < s.rank(); ++i) all.middleCols(static_cast<Eigen::Index>(i) * cols, cols) = s.element_matrix(i);
  return orthonormal_columns(all).cols() == d;
}

OperatorSpan kernel_of_linear_map(const Matrix& t, const Legs& domain, const Legs& codomain) {
  const Eigen::Index n = static_cast<Eigen::Index>(total_dim(domain)) * total_dim(codomain);
  if (t.cols() != n) throw SignatureError("linear map does not act on the declared operators");
  if (t.rows() == 0) return OperatorSpan::full(domain, codomain);
  Eigen::BDCSVD<Matrix> svd(t, Eigen::ComputeFullV);
  const int r = numerical_rank(svd.singularValues());
  return OperatorSpan(domain, codomain, svd.matrixV().rightCols(n - r));
}

const char* to_string(CrossVariant v) {
  switch (v) {
    case CrossVariant::hbt: return "hbt";
    case CrossVariant::habt: return "habt";
    case CrossVariant::bt: return "bt";
  }
  return "?";
}

LegOperator cross_alpha(const LegOperator& a, const Legs& h2, CrossVariant variant,
                        const BraidingProvider& braiding) {
  const LegOperator id2 = LegOperator::identity(h2);
  switch (variant) {
    case CrossVariant::hbt:
      return compose(braiding.braid(h2, a.codomain()),
                     compose(tensor(id2, a), braiding.braid_inverse(h2, a.domain())));
    case CrossVariant::habt:
      return compose(braiding.braid_inverse(a.codomain(), h2),
                     compose(tensor(id2, a), braiding.braid(a.domain(), h2)));
    case CrossVariant::bt:
      return tensor(a, id2);
  }
  throw SignatureError("unknown crossed-product variant");
}

LegOperator cross_beta(const LegOperator& b, const Legs& h1, CrossVariant variant,
                       const BraidingProvider& braiding) {
  const LegOperator id1 = LegOperator::identity(h1);
  if (variant != CrossVariant::bt) return tensor(id1, b);
  return compose(braiding.braid_inverse(h1, b.codomain()),
                 compose(tensor(b, id1), braiding.braid(h1, b.domain())));
}

OperatorSpan crossed_product(const OperatorSpan& s1, const OperatorSpan& s2,
                             const BraidingProvider& braiding, CrossVariant variant) {
  const Legs& h1 = s1.domain();
  const Legs& h2 = s2.domain();
  std::vector<Matrix> alphas, betas, gens;
  for (const auto& a : s1.basis()) alphas.push_back(cross_alpha(a, h2, variant, braiding).matrix());
  for (const auto& b : s2.basis()) betas.push_back(cross_beta(b, h1, variant, braiding).matrix());
  for (const auto& a : alphas)
    for (const auto& b : betas) gens.push_back(a * b);
  Legs h = concat(h1, h2);
  return OperatorSpan::from_generators(h, h, gens);
}

bool crossed_product_commutation_check(const OperatorSpan& s1, const OperatorSpan& s2,
                                       const BraidingProvider& braiding, CrossVariant variant,
                                       double tol) {
  const Legs& h1 = s1.domain();
  const Legs& h2 = s2.domain();
  std::vector<Matrix> alphas, betas, ab, ba;
  for (const auto& a : s1.basis()) alphas.push_back(cross_alpha(a, h2, variant, braiding).matrix());
  for (const auto& b : s2.basis()) betas.push_back(cross_beta(b, h1, variant, braiding).matrix());
  for (const auto& a : alphas)
    for (const auto& b : betas) {
      ab.push_back(a * b);
      ba.push_back(b * a);
    }
  Legs h = concat(h1, h2);
  return equals(OperatorSpan::from_generators(h, h, ab), OperatorSpan::from_generators(h, h, ba),
                tol);
}

bool relative_multiplier_contains(const OperatorSpan& s, const LegOperator& x, double tol) {
  for (const auto& b : s.basis()) {
    if (!contains(s, compose(x, b), tol)) return false;
    if (!contains(s, compose(b, x), tol)) return false;
  }
  return true;
}

LegOperator Conjugator::apply(const LegOperator& a) const {
  const LegOperator id = LegOperator::identity(aux);
  LegOperator inner = side == AuxSide::left ? tensor(id, a) : tensor(a, id);
  return compose(v, compose(inner, adjoint(v)));
}

Conjugator Conjugator::identity(const Legs& h) {
  return Conjugator{LegOperator::identity(h), Legs{}, AuxSide::left};
}

CrossedProduct::CrossedProduct(OperatorSpan s1, OperatorSpan s2, Braiding braiding,
                               CrossVariant variant)
    : s1_(std::move(s1)), s2_(std::move(s2)), braiding_(std::move(braiding)), variant_(variant) {
  if (s1_.domain() != s1_.codomain() || s2_.domain() != s2_.codomain())
    throw SignatureError("crossed products need endomorphism spans");
  h1_ = s1_.domain();
  h2_ = s2_.domain();
  const int r1 = s1_.rank(), r2 = s2_.rank();
  const Legs h = concat(h1_, h2_);
  const Eigen::Index n = static_cast<Eigen::Index>(total_dim(h)) * total_dim(h);
  generators_.resize(n, static_cast<Eigen::Index>(r1) * r2);
  std::vector<Matrix> alphas, betas;
  for (const auto& a : s1_.basis()) alphas.push_back(cross_alpha(a, h2_, variant_, *braiding_).matrix());
  for (const auto& b : s2_.basis()) betas.push_back(cross_beta(b, h1_, variant_, *braiding_).matrix());
  for (int i = 0; i < r1; ++i)
    for (int j = 0; j < r2; ++j) generators_.col(static_cast<Eigen::Index>(i) * r2 + j) = vec(alphas[i] * betas[j]);
  span_ = OperatorSpan(h, h, orthonormal_columns(generators_));
  const Eigen::Index g = generators_.cols();
  if (g == 0) return;
  const unsigned flags = Eigen::ComputeThinU | (g > n ? Eigen::ComputeFullV : Eigen::ComputeThinV);
  Eigen::BDCSVD<Matrix> svd(generators_, flags);
  const int r = numerical_rank(svd.singularValues());
  u_ = svd.matrixU().leftCols(r);
  v_ = svd.matrixV().leftCols(r);
  sigma_ = svd.singularValues().head(r);
  null_ = svd.matrixV().rightCols(g - r);
}

std::pair<Matrix, double> CrossedProduct::decompose(const LegOperator& x) const {
  const Legs h = concat(h1_, h2_);
  if (x.domain() != h || x.codomain() != h)
    throw SignatureError("element does not act on " + describe(h));
  const int r1 = s1_.rank(), r2 = s2_.rank();
  CVector xv = vec(x.matrix());
  CVector c = CVector::Zero(generators_.cols());
  if (sigma_.size() > 0)
    c = v_ * (sigma_.cwiseInverse().cast<cplx>().asDiagonal() * (u_.adjoint() * xv));
  const double nx = xv.norm();
  const double res = nx == 0.0 ? 0.0 : (xv - generators_ * c).norm() / nx;
  Matrix coeffs(r1, r2);
  for (int i = 0; i < r1; ++i)
    for (int j = 0; j < r2; ++j) coeffs(i, j) = c(static_cast<Eigen::Index>(i) * r2 + j);
  return {coeffs, res};
}

std::vector<LegOperator> CrossedProduct::extend(const Conjugator& f, const Conjugator& g,
                                                const std::vector<LegOperator>& xs,
                                                double tol) const {
  const int r1 = s1_.rank(), r2 = s2_.rank();
  std::vector<LegOperator> fa, gb;
  for (const auto& a : s1_.basis()) fa.push_back(f.apply(a));
  for (const auto& b : s2_.basis()) gb.push_back(g.apply(b));
  const Legs h1p = r1 > 0 ? fa.front().domain() : h1_;
  const Legs h2p = r2 > 0 ? gb.front().domain() : h2_;
  const Legs hp = concat(h1p, h2p);
  const int d2p = total_dim(h2p);

  std::vector<Matrix> alphas;  // α'(f(a_i)) for hbt/habt, f(a_i) itself for bt
  for (const auto& a : fa)
    alphas.push_back(variant_ == CrossVariant::bt ? a.matrix()
                                                  : cross_alpha(a, h2p, variant_, *braiding_).matrix());

  auto assemble = [&](const Matrix& coeffs) {
    Matrix out = Matrix::Zero(total_dim(hp), total_dim(hp));
    for (int i = 0; i < r1; ++i) {
      Matrix y = Matrix::Zero(d2p, d2p);
      for (int j = 0; j < r2; ++j)
        if (coeffs(i, j) != cplx(0.0)) y += coeffs(i, j) * gb[j].matrix();
      if (y.isZero(0.0)) continue;
      if (variant_ == CrossVariant::bt) {
        Matrix beta = cross_beta(LegOperator(h2p, h2p, y), h1p, variant_, *braiding_).matrix();
        out += kron_identity_times(alphas[i], d2p, beta);
      } else {
        out += times_identity_kron(alphas[i], y);
      }
    }
    return out;
  };

  // Well-definedness on the relations Σ n_ij α(a_i)β(b_j) = 0.
  if (null_.cols() > 0) {
    std::vector<double> na, nb;
    for (const auto& a : alphas) na.push_back(a.norm());
    for (const auto& b : gb) nb.push_back(b.matrix().norm());
    for (Eigen::Index k = 0; k < null_.cols(); ++k) {
      Matrix coeffs(r1, r2);
      double bound = 0.0;
      for (int i = 0; i < r1; ++i)
        for (int j = 0; j < r2; ++j) {
          coeffs(i, j) = null_(static_cast<Eigen::Index>(i) * r2 + j, k);
          bound += std::abs(coeffs(i, j)) * na[i] * nb[j];
        }
      const double image = assemble(coeffs).norm();
      if (bound > 0.0 && image > tol * bound)
        throw DecompositionError("extension is not well defined: a relation among generators "
                                 "maps to an element of relative norm " +
                                 std::to_string(image / bound));
    }
  }

  std::vector<LegOperator> out;
  for (const auto& x : xs) {
    auto [coeffs, res] = decompose(x);
    if (res > tol)
      throw DecompositionError("element is not in the crossed product (relative residual " +
                               std::to_string(res) + ")");
    out.emplace_back(hp, hp, assemble(coeffs));
  }
  return out;
}

LegOperator extend_on_crossed_product(const Conjugator& f, const Conjugator& g,
                                      const OperatorSpan& s1, const OperatorSpan& s2,
                                      const Braiding& braiding, CrossVariant variant,
                                      const LegOperator& x, double tol) {
  CrossedProduct cp(s1, s2, braiding, variant);
  return cp.extend(f, g, {x}, tol).front();
}

}  // namespace bmu
