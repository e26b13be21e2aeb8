// Ensemble generation from isometries (Hughston-Jozsa-Wootters), pairwise
// reshuffles, the Givens coordinate-ascent optimizer over ensembles, and the
// explicit twelve-member ensemble for two copies of diag(1/3, 1/3, 1/3, 0).

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "eoa/quantum.hpp"

namespace eoa {

/// m x r matrix with orthonormal columns (W^dagger W = I_r within 1e-10).
class Isometry {
 public:
  explicit Isometry(Matrix w);
  /// First r columns of a unitary.
  static Isometry from_unitary(const Matrix& u, std::size_t r);

  const Matrix& matrix() const noexcept { return w_; }
  std::size_t members() const noexcept { return w_.rows(); }
  std::size_t rank() const noexcept { return w_.cols(); }

 private:
  Matrix w_;
};

/// Members with probability below this are dropped from generated ensembles.
inline constexpr double kDropProbability = 1e-12;

/// sqrt(p_j) |psi_j> = sum_i W(j, i) sqrt(lambda_i) |e_i> over the nonzero
/// eigenpairs of rho. W.rank() must equal rank(rho).
Ensemble ensemble_from_isometry(const DensityMatrix& rho, const Isometry& w);

/// Replaces members i and j by
///   sqrt(p_i') psi_i' =  cos(t) sqrt(p_i) psi_i + e^{i phi} sin(t) sqrt(p_j) psi_j
///   sqrt(p_j') psi_j' = -e^{-i phi} sin(t) sqrt(p_i) psi_i + cos(t) sqrt(p_j) psi_j
/// Members whose new probability falls below kDropProbability are dropped.
Ensemble pairwise_reshuffle(const Ensemble& e, std::size_t i, std::size_t j, double theta, double phi);

enum class Direction { maximize, minimize };

struct OptimizerConfig {
  Direction direction = Direction::maximize;
  std::optional<std::size_t> ensemble_size;  // nullopt = auto
  std::size_t restarts = 16;
  std::int64_t seed = 1;
  std::size_t max_sweeps = 200;
  double tol = 1e-9;
  /// 0 = one worker per hardware thread. Results do not depend on it.
  std::size_t threads = 0;
};

struct RestartOutcome {
  std::int64_t seed;
  double value;
  std::size_t sweeps;
  bool converged;
};

struct OptimizerResult {
  double best_value = 0.0;
  Ensemble best_ensemble;
  std::vector<RestartOutcome> per_restart;
  bool converged = false;
  std::size_t ensemble_size = 0;
  std::size_t rank = 0;
};

/// min(max(2r, r + 4), 64).
std::size_t auto_ensemble_size(std::size_t rank);

/// Objective trace of one restart: the total after the initial state and after
/// every sweep. Exposed for the monotonicity property tests.
std::vector<double> optimize_trace(const DensityMatrix& rho, const OptimizerConfig& cfg, std::size_t restart);

OptimizerResult optimize(const DensityMatrix& rho, const OptimizerConfig& cfg);

struct AppendixConstants {
  double a, b, c, d, alpha1, alpha2;
};

/// Constants from their closed forms (evaluated in long double).
AppendixConstants appendix_constants();

struct AppendixEnsemble {
  DensityMatrix target;  // regroup(rho (x) rho), rho = diag(1/3, 1/3, 1/3, 0)
  Ensemble ensemble;     // twelve members, basis |a1 a2 b1 b2>
  AppendixConstants constants;
};

AppendixEnsemble appendix_ensemble();

/// Raised when the explicit construction fails its own consistency check.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SuperadditivityReport {
  double consistency_residual;  // max |sum p Pi - rho (x) rho|
  double single_copy_value;     // A(rho) = 2/3, pinned by coinciding bounds
  double additive_value;        // 2 A(rho)
  double ensemble_value;        // E of the twelve-member ensemble
  double entropic_upper;        // entropic bound on the two-copy state
  double gap;                   // ensemble_value - additive_value
  bool superadditive;           // gap > 0.01
};

/// Throws VerificationError if the consistency residual exceeds 1e-8 or the
/// single-copy value is not pinned by its bounds.
SuperadditivityReport verify_superadditivity();

}  // namespace eoa
