#pragma once

#include <cstdint>
#include <vector>

#include "bmu/mult_unitary.hpp"

namespace bmu {

struct SearchProblem {
  Space l;
  Braiding braiding;
  /// Restrict H to preserve the total degree mod this modulus; 0 disables.
  int degree_modulus = 0;
  /// H must commute with each of these matrices on L⊗L.
  std::vector<Matrix> commutant;
  std::uint64_t seed = 0;
  int restarts = 16;
  int max_iter = 200;
  /// Accept F when pentagon_residual(F) < target_residual.
  double target_residual = 1e-10;
  /// Standard deviation of the random starting parameters.
  double init_scale = 1.0;
};

/// F(θ) = exp(i Σ θ_k B_k) with B_k an orthonormal basis of the admissible
/// Hermitian matrices, and the objective ‖F23F12 − F12 c12 F23 c⁻¹12 F23‖².
class PentagonObjective {
 public:
  explicit PentagonObjective(const SearchProblem& problem);

  int num_params() const { return static_cast<int>(basis_.size()); }
  const std::vector<Matrix>& basis() const { return basis_; }

  Matrix hermitian(const Eigen::VectorXd& theta) const;
  Matrix unitary(const Eigen::VectorXd& theta) const;
  /// Coordinates of a Hermitian matrix in the admissible basis (orthogonal projection).
  Eigen::VectorXd coordinates(const Matrix& h) const;

  double value(const Eigen::VectorXd& theta) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& theta) const;
  /// Real-stacked residual [Re r; Im r] and its Jacobian.
  void residual_and_jacobian(const Eigen::VectorXd& theta, Eigen::VectorXd& r,
                             Eigen::MatrixXd& j) const;

 private:
  Matrix pentagon_defect(const Matrix& f) const;

  Space l_;
  Legs ctx_;
  Matrix c12_, cinv12_;
  std::vector<Matrix> basis_;
};

struct SearchResult {
  MultUnitary unitary;
  double residual = 0.0;
  int restart = 0;
  int iterations = 0;
  bool trivial = false;
  Certificate certificate;
};

struct SearchOutcome {
  std::uint64_t seed = 0;
  int restarts = 0;
  int num_params = 0;
  std::vector<SearchResult> results;
};

/// Multi-restart Levenberg–Marquardt. Results are deduplicated (distance
/// < 1e-6), ordered by (residual, restart) and every one of them passes the
/// unitarity and Pentagon gates at the target residual.
SearchOutcome search(const SearchProblem& problem);

/// ‖F − (tr F / N)·1‖ < 1e-6.
bool is_trivial_solution(const LegOperator& f);

}  // namespace bmu
