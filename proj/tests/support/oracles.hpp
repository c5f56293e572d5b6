#pragma once

// Brute-force reference computations for the tests. Everything here works on
// raw index arithmetic and Eigen's LU, independent of the library's leg
// calculus and SVD-based span code.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline Matrix kac_takesaki(const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  Matrix w = Matrix::Zero(n * n, n * n);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) w(g * n + table[g][h], g * n + h) = 1.0;
  return w;
}

inline Matrix flip(int d1, int d2) {
  Matrix s = Matrix::Zero(d1 * d2, d1 * d2);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2; ++j) s(j * d1 + i, i * d2 + j) = 1.0;
  return s;
}

/// c(e_i⊗e_j) = q^{g_i h_j} e_j⊗e_i, q = exp(2πi/m).
inline Matrix phase(const std::vector<int>& g, const std::vector<int>& h, int m) {
  const int d1 = static_cast<int>(g.size()), d2 = static_cast<int>(h.size());
  Matrix s = Matrix::Zero(d1 * d2, d1 * d2);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2; ++j)
      s(j * d1 + i, i * d2 + j) = std::polar(1.0, 2.0 * M_PI * ((g[i] * h[j]) % m) / m);
  return s;
}

/// X on d⊗d placed on legs (a, b) of d⊗d⊗d, a < b, by explicit index maps.
inline Matrix on_legs(const Matrix& x, int d, int a, int b) {
  const int n = d * d * d;
  Matrix out = Matrix::Zero(n, n);
  auto digit = [d](int idx, int leg) {
    int p = 1;
    for (int k = leg; k < 3; ++k) p *= d;
    return (idx / p) % d;
  };
  for (int row = 0; row < n; ++row)
    for (int col = 0; col < n; ++col) {
      bool other_equal = true;
      for (int leg = 1; leg <= 3; ++leg)
        if (leg != a && leg != b && digit(row, leg) != digit(col, leg)) other_equal = false;
      if (!other_equal) continue;
      out(row, col) = x(digit(row, a) * d + digit(row, b), digit(col, a) * d + digit(col, b));
    }
  return out;
}

/// ‖X23 X12 − X12 X13 X23‖ for an ordinary (flip-braided) multiplicative unitary.
inline double pentagon_flip(const Matrix& x, int d) {
  Matrix x12 = on_legs(x, d, 1, 2), x23 = on_legs(x, d, 2, 3), x13 = on_legs(x, d, 1, 3);
  return (x23 * x12 - x12 * x13 * x23).norm();
}

/// Right slices (id⊗⟨e_i|)Y(id⊗|e_j⟩) of Y on d1⊗d2.
inline std::vector<Matrix> right_slices(const Matrix& y, int d1, int d2) {
  std::vector<Matrix> out;
  for (int i = 0; i < d2; ++i)
    for (int j = 0; j < d2; ++j) {
      Matrix s(d1, d1);
      for (int a = 0; a < d1; ++a)
        for (int b = 0; b < d1; ++b) s(a, b) = y(a * d2 + i, b * d2 + j);
      out.push_back(s);
    }
  return out;
}

/// Left slices (⟨e_i|⊗id)Y(|e_j⟩⊗id) of Y on d1⊗d2.
inline std::vector<Matrix> left_slices(const Matrix& y, int d1, int d2) {
  std::vector<Matrix> out;
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d1; ++j) {
      Matrix s(d2, d2);
      for (int a = 0; a < d2; ++a)
        for (int b = 0; b < d2; ++b) s(a, b) = y(i * d2 + a, j * d2 + b);
      out.push_back(s);
    }
  return out;
}

/// Rank of the linear span of the matrices (full-pivot LU with a fixed threshold).
inline int span_rank(const std::vector<Matrix>& ms, double threshold = 1e-9) {
  if (ms.empty()) return 0;
  const Eigen::Index n = ms[0].size();
  Matrix stacked(n, static_cast<Eigen::Index>(ms.size()));
  for (size_t k = 0; k < ms.size(); ++k)
    stacked.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Eigen::VectorXcd>(ms[k].data(), n);
  Eigen::FullPivLU<Matrix> lu(stacked);
  lu.setThreshold(threshold);
  return static_cast<int>(lu.rank());
}

/// Dimension of {a : X(a⊗1)X* = c(a⊗1)c⁻¹} for X on d⊗d; c given as a matrix.
inline int goodness_dim(const Matrix& x, const Matrix& c, int d) {
  const int n = d * d;
  Matrix t(n * n, n);
  Matrix id = Matrix::Identity(d, d);
  for (int k = 0; k < n; ++k) {
    Matrix a = Matrix::Zero(d, d);
    a(k / d, k % d) = 1.0;
    Matrix a1(n, n);
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) a1(r, s) = a(r / d, s / d) * id(r % d, s % d);
    Matrix diff = x * a1 * x.adjoint() - c * a1 * c.adjoint();
    t.col(k) = Eigen::Map<Eigen::VectorXcd>(diff.data(), n * n);
  }
  Eigen::FullPivLU<Matrix> lu(t);
  lu.setThreshold(1e-9);
  return n - static_cast<int>(lu.rank());
}

inline Matrix random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = cplx(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) q.col(i) *= std::polar(1.0, std::arg(r(i, i)));
  return q;
}

/// Random unitary that preserves total degree mod m: a block-diagonal unitary
/// on the homogeneous components.
inline Matrix random_graded_unitary(const std::vector<int>& degrees, int m, std::mt19937_64& rng) {
  const int n = static_cast<int>(degrees.size());
  Matrix u = Matrix::Zero(n, n);
  for (int r = 0; r < m; ++r) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (((degrees[i] % m) + m) % m == r) idx.push_back(i);
    if (idx.empty()) continue;
    Matrix block = random_unitary(static_cast<int>(idx.size()), rng);
    for (size_t a = 0; a < idx.size(); ++a)
      for (size_t b = 0; b < idx.size(); ++b) u(idx[a], idx[b]) = block(a, b);
  }
  return u;
}

}  // namespace oracle
