#include "bmu/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

namespace bmu {

namespace {

std::vector<Matrix> hermitian_basis(int n, const std::vector<bool>& allowed) {
  std::vector<Matrix> out;
  const double s = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      if (!allowed[static_cast<std::size_t>(a) * n + b]) continue;
      if (a == b) {
        Matrix e = Matrix::Zero(n, n);
        e(a, a) = 1.0;
        out.push_back(e);
        continue;
      }
      Matrix re = Matrix::Zero(n, n), im = Matrix::Zero(n, n);
      re(a, b) = re(b, a) = s;
      im(a, b) = cplx(0.0, -s);
      im(b, a) = cplx(0.0, s);
      out.push_back(re);
      out.push_back(im);
    }
  return out;
}

// Orthonormal real combinations of `basis` that commute with every matrix in `cs`.
std::vector<Matrix> restrict_to_commutant(const std::vector<Matrix>& basis,
                                          const std::vector<Matrix>& cs) {
  if (cs.empty() || basis.empty()) return basis;
  const Eigen::Index n = basis.front().rows();
  const Eigen::Index rows = 2 * n * n * static_cast<Eigen::Index>(cs.size());
  Eigen::MatrixXd t(rows, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    Eigen::VectorXd col(rows);
    Eigen::Index off = 0;
    for (const auto& c : cs) {
      Matrix comm = basis[k] * c - c * basis[k];
      CVector v = vec(comm);
      col.segment(off, n * n) = v.real();
      col.segment(off + n * n, n * n) = v.imag();
      off += 2 * n * n;
    }
    t.col(static_cast<Eigen::Index>(k)) = col;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(t, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double scale = std::max(1.0, sv.size() ? sv(0) : 0.0);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > 1e-10 * scale) ++rank;
  std::vector<Matrix> out;
  const Eigen::MatrixXd& v = svd.matrixV();
  for (Eigen::Index k = rank; k < v.cols(); ++k) {
    Matrix m = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < basis.size(); ++i) m += v(static_cast<Eigen::Index>(i), k) * basis[i];
    out.push_back(m);
  }
  return out;
}

struct ExpData {
  Matrix q;
  Matrix g;  // divided differences of t ↦ exp(it) at the eigenvalues
  Matrix f;
};

ExpData exp_data(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Eigen::Index n = lam.size();
  ExpData d;
  d.q = es.eigenvectors();
  d.g.resize(n, n);
  CVector e(n);
  for (Eigen::Index a = 0; a < n; ++a) e(a) = std::exp(cplx(0.0, lam(a)));
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      const double diff = lam(a) - lam(b);
      if (std::abs(diff) < 1e-8)
        d.g(a, b) = cplx(0.0, 1.0) * std::exp(cplx(0.0, 0.5 * (lam(a) + lam(b))));
      else
        d.g(a, b) = (e(a) - e(b)) / diff;
    }
  d.f = d.q * e.asDiagonal() * d.q.adjoint();
  return d;
}

Matrix kron_id_right(const Matrix& x, Eigen::Index d) {
  return Eigen::kroneckerProduct(x, Matrix::Identity(d, d));
}

}  // namespace

PentagonObjective::PentagonObjective(const SearchProblem& p) : l_(p.l), ctx_{p.l, p.l, p.l} {
  const int d = l_.dim, n = d * d;
  std::vector<bool> allowed(static_cast<std::size_t>(n) * n, true);
  if (p.degree_modulus > 0) {
    if (!l_.graded()) throw SignatureError("degree constraint needs a graded space");
    const Legs ll{l_, l_};
    auto mod = [&](int x) { return ((x % p.degree_modulus) + p.degree_modulus) % p.degree_modulus; };
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        allowed[static_cast<std::size_t>(a) * n + b] =
            mod(total_degree(ll, a)) == mod(total_degree(ll, b));
  }
  basis_ = restrict_to_commutant(hermitian_basis(n, allowed), p.commutant);
  const LegOperator c = p.braiding->braid(l_, l_);
  c12_ = embed_adjacent(c, ctx_, 1).matrix();
  cinv12_ = c12_.adjoint();
}

Matrix PentagonObjective::hermitian(const Eigen::VectorXd& theta) const {
  if (theta.size() != num_params()) throw SignatureError("parameter vector has the wrong length");
  const Eigen::Index n = static_cast<Eigen::Index>(l_.dim) * l_.dim;
  Matrix h = Matrix::Zero(n, n);
  for (int k = 0; k < num_params(); ++k) h += theta(k) * basis_[k];
  return h;
}

Matrix PentagonObjective::unitary(const Eigen::VectorXd& theta) const {
  return exp_data(hermitian(theta)).f;
}

Eigen::VectorXd PentagonObjective::coordinates(const Matrix& h) const {
  Eigen::VectorXd out(num_params());
  for (int k = 0; k < num_params(); ++k) out(k) = (basis_[k].adjoint() * h).trace().real();
  return out;
}

Matrix PentagonObjective::pentagon_defect(const Matrix& f) const {
  const Eigen::Index d = l_.dim;
  const Matrix f12 = kron_id_right(f, d);
  const Matrix f23 = Eigen::kroneckerProduct(Matrix::Identity(d, d), f);
  return f23 * f12 - f12 * c12_ * f23 * cinv12_ * f23;
}

double PentagonObjective::value(const Eigen::VectorXd& theta) const {
  return pentagon_defect(unitary(theta)).squaredNorm();
}

void PentagonObjective::residual_and_jacobian(const Eigen::VectorXd& theta, Eigen::VectorXd& r,
                                              Eigen::MatrixXd& j) const {
  const Eigen::Index d = l_.dim;
  const ExpData e = exp_data(hermitian(theta));
  const Matrix id = Matrix::Identity(d, d);
  const Matrix f12 = kron_id_right(e.f, d);
  const Matrix f23 = Eigen::kroneckerProduct(id, e.f);
  const Matrix rhs_tail = c12_ * f23 * cinv12_;  // c12 F23 c⁻¹12
  const Matrix p = f23 * f12 - f12 * rhs_tail * f23;
  const Eigen::Index m = p.size();
  r.resize(2 * m);
  CVector pv = vec(p);
  r.head(m) = pv.real();
  r.tail(m) = pv.imag();
  j.resize(2 * m, num_params());
  const Matrix qa = e.q.adjoint();
  for (int k = 0; k < num_params(); ++k) {
    // d/dt exp(i(H + tB)) = Q (G ∘ (Q* B Q)) Q*
    const Matrix df = e.q * e.g.cwiseProduct(qa * basis_[k] * e.q) * qa;
    const Matrix df12 = kron_id_right(df, d);
    const Matrix df23 = Eigen::kroneckerProduct(id, df);
    const Matrix dp = df23 * f12 + f23 * df12 - df12 * rhs_tail * f23 -
                      f12 * (c12_ * df23 * cinv12_) * f23 - f12 * rhs_tail * df23;
    CVector v = vec(dp);
    j.col(k).head(m) = v.real();
    j.col(k).tail(m) = v.imag();
  }
}

Eigen::VectorXd PentagonObjective::gradient(const Eigen::VectorXd& theta) const {
  Eigen::VectorXd r;
  Eigen::MatrixXd j;
  residual_and_jacobian(theta, r, j);
  return 2.0 * j.transpose() * r;
}

bool is_trivial_solution(const LegOperator& f) {
  const Matrix& m = f.matrix();
  const Eigen::Index n = m.rows();
  const cplx s = m.trace() / static_cast<double>(n);
  return (m - s * Matrix::Identity(n, n)).norm() < 1e-6;
}

namespace {

struct Run {
  Eigen::VectorXd theta;
  double residual;
  int iterations;
};

Run levenberg_marquardt(const PentagonObjective& obj, Eigen::VectorXd theta, int max_iter,
                        double target) {
  Eigen::VectorXd r;
  Eigen::MatrixXd j;
  obj.residual_and_jacobian(theta, r, j);
  double cost = r.squaredNorm();
  double mu = 1e-3;
  int it = 0;
  for (; it < max_iter && std::sqrt(cost) >= 0.01 * target; ++it) {
    const Eigen::MatrixXd jtj = j.transpose() * j;
    const Eigen::VectorXd jtr = j.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 30 && !improved; ++tries) {
      Eigen::MatrixXd a = jtj;
      a.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
      const Eigen::VectorXd step = -a.ldlt().solve(jtr);
      const Eigen::VectorXd cand = theta + step;
      const double c = obj.value(cand);
      if (c < cost) {
        theta = cand;
        mu = std::max(mu / 3.0, 1e-15);
        improved = true;
      } else {
        mu *= 4.0;
      }
    }
    if (!improved) break;
    obj.residual_and_jacobian(theta, r, j);
    cost = r.squaredNorm();
  }
  return Run{theta, std::sqrt(cost), it};
}

}  // namespace

SearchOutcome search(const SearchProblem& p) {
  const PentagonObjective obj(p);
  SearchOutcome out;
  out.seed = p.seed;
  out.restarts = p.restarts;
  out.num_params = obj.num_params();
  std::mt19937_64 rng(p.seed);
  std::normal_distribution<double> normal(0.0, p.init_scale);
  const Legs ll{p.l, p.l};

  std::vector<SearchResult> found;
  for (int k = 0; k < p.restarts; ++k) {
    Eigen::VectorXd theta(obj.num_params());
    for (int i = 0; i < theta.size(); ++i) theta(i) = normal(rng);
    const Run run = levenberg_marquardt(obj, theta, p.max_iter, p.target_residual);
    if (!(run.residual < p.target_residual)) continue;
    MultUnitary m(p.l, LegOperator(ll, ll, obj.unitary(run.theta)), p.braiding);
    Certificate cert = pentagon_certificate(m, p.target_residual);
    if (!cert.all_pass()) continue;
    const double residual = pentagon_residual(m);
    const bool trivial = is_trivial_solution(m.op());
    found.push_back(SearchResult{std::move(m), residual, k, run.iterations, trivial, std::move(cert)});
  }
  std::stable_sort(found.begin(), found.end(), [](const SearchResult& a, const SearchResult& b) {
    if (a.residual != b.residual) return a.residual < b.residual;
    return a.restart < b.restart;
  });
  for (auto& f : found) {
    bool dup = false;
    for (const auto& kept : out.results)
      if (hs_distance(kept.unitary.op(), f.unitary.op()) < 1e-6) {
        dup = true;
        break;
      }
    if (!dup) out.results.push_back(std::move(f));
  }
  return out;
}

}  // namespace bmu
