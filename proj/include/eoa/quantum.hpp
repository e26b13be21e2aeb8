// Bipartite states: density matrices, pure states, ensembles, partial traces
// and entropies. Entropies are in bits (ebits for entanglement).
//
// Basis convention: the joint index of |a>|b> is a * d_b + b, so Alice's
// index is the most significant.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eoa/matcore.hpp"

namespace eoa {

struct BipartiteDims {
  std::size_t a = 1;
  std::size_t b = 1;

  std::size_t total() const noexcept { return a * b; }
  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

inline constexpr double kTraceTol = 1e-10;
inline constexpr double kNormTol = 1e-10;

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity; the ValidationError
  /// message names the first check that failed ("hermiticity", "trace",
  /// "positivity" or "dimension").
  DensityMatrix(BipartiteDims dims, Matrix mat);

  /// Diagonal state in the product basis.
  static DensityMatrix diagonal(BipartiteDims dims, std::span<const double> probs);
  static DensityMatrix diagonal(BipartiteDims dims, std::initializer_list<double> probs);
  /// rho_A (x) rho_B as a state on (rho_a.rows(), rho_b.rows()).
  static DensityMatrix product(const Matrix& rho_a, const Matrix& rho_b);

  const BipartiteDims& dims() const noexcept { return dims_; }
  const Matrix& mat() const noexcept { return mat_; }

  /// True if every off-diagonal entry is at most `tol` in modulus.
  bool is_diagonal(double tol = 1e-10) const;

 private:
  BipartiteDims dims_;
  Matrix mat_;
};

class PureState {
 public:
  /// Throws unless |vec| = 1 within kNormTol and vec.size() = dims.total().
  PureState(BipartiteDims dims, std::vector<Complex> vec);
  /// Normalizes `vec` first; throws on the zero vector.
  static PureState normalized(BipartiteDims dims, std::vector<Complex> vec);
  /// |a>|b> for product basis indices.
  static PureState basis(BipartiteDims dims, std::size_t a, std::size_t b);

  const BipartiteDims& dims() const noexcept { return dims_; }
  std::span<const Complex> vec() const noexcept { return vec_; }

  Matrix projector() const;
  /// d_a x d_b coefficient matrix, entry (a, b) = <ab|psi>.
  Matrix coefficients() const;
  DensityMatrix density() const;

 private:
  BipartiteDims dims_;
  std::vector<Complex> vec_;
};

struct EnsembleMember {
  double p;
  PureState state;
};

class Ensemble {
 public:
  /// Probabilities must lie in (0, 1] and sum to 1 within 1e-10; all states
  /// must share `dims`.
  Ensemble(BipartiteDims dims, std::vector<EnsembleMember> members);

  const BipartiteDims& dims() const noexcept { return dims_; }
  std::span<const EnsembleMember> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }

 private:
  BipartiteDims dims_;
  std::vector<EnsembleMember> members_;
};

enum class Side { over_a, over_b };

/// tr_A (result d_b x d_b) or tr_B (result d_a x d_a).
Matrix partial_trace(const Matrix& rho, BipartiteDims dims, Side side);
Matrix partial_trace(const DensityMatrix& rho, Side side);

/// -tr(m log2 m). Eigenvalues in [-1e-8, 0) count as zero. A trace away from
/// one is accepted (callers use unnormalized blocks) but more negative
/// eigenvalues are not.
double von_neumann_entropy(const Matrix& m);

double binary_entropy(double x);
double shannon_entropy(std::span<const double> p);
double shannon_entropy(std::initializer_list<double> p);

/// Squared Schmidt coefficients (reduced-state spectrum), descending.
std::vector<double> schmidt_probabilities(const PureState& psi);

/// Entropy of entanglement, via the Schmidt coefficients.
double pure_entanglement(const PureState& psi);

/// sum_i p_i E(psi_i).
double average_entanglement(const Ensemble& e);

DensityMatrix ensemble_density(const Ensemble& e);

/// Spectral ensemble; eigenvalues at or below `cutoff` are skipped.
Ensemble eigen_ensemble(const DensityMatrix& rho, double cutoff = 1e-10);

/// Number of eigenvalues above `cutoff`.
std::size_t rank(const DensityMatrix& rho, double cutoff = 1e-10);

/// Reorders a state on A1 B1 A2 B2 (e.g. kron(rho1, rho2)) into the
/// bipartition (A1 A2 | B1 B2).
DensityMatrix regroup(const Matrix& rho12, BipartiteDims dims1, BipartiteDims dims2);

/// Entanglement of an unnormalized vector v weighted by its norm:
/// |v|^2 E(v / |v|), computed without normalizing. Zero for the zero vector.
/// This is the per-member term of the ensemble objective.
double weighted_entanglement(std::span<const Complex> v, BipartiteDims dims);

}  // namespace eoa
