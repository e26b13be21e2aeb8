// Closed-form upper and lower bounds on the entanglement of assistance.

#pragma once

#include <optional>

#include "eoa/quantum.hpp"

namespace eoa {

/// Bounds coincide (and pin the exact value) within this tolerance.
inline constexpr double kExactTol = 1e-9;
/// A marginal with purity >= 1 - kPurityTol counts as pure.
inline constexpr double kPurityTol = 1e-9;

struct BoundsReport {
  double entropic_upper = 0.0;
  std::optional<double> fidelity_upper;  // two qubits only
  std::optional<double> diagonal_lower;  // two qubits, diagonal in the product basis
  double eigen_lower = 0.0;
  double capacity = 0.0;
  bool zero_assistance = false;
  double eof_gap_rhs = 0.0;
  std::optional<double> exact_value;
};

/// min(S(tr_A rho), S(tr_B rho)).
double entropic_bound(const DensityMatrix& rho);

/// F(rho, rho~). Throws UnsupportedError unless dims are (2, 2).
double fidelity_bound(const DensityMatrix& rho);

/// (a1 + a4) H2(a1 / (a1 + a4)) + (a2 + a3) H2(a2 / (a2 + a3)) for
/// rho = diag(a1, a2, a3, a4); a group of zero weight contributes 0.
/// Throws UnsupportedError for non-two-qubit or non-diagonal input.
double diagonal_lower_bound(const DensityMatrix& rho);

/// The four-state realization behind diagonal_lower_bound:
/// (sqrt a1, 0, 0, +-sqrt a4)/sqrt(a1 + a4) with weight (a1 + a4)/2 each, and
/// (0, sqrt a2, +-sqrt a3, 0)/sqrt(a2 + a3) with weight (a2 + a3)/2 each.
/// Members of a zero-weight group are omitted.
Ensemble diagonal_decomposition(const DensityMatrix& rho);

/// Average entanglement of the spectral ensemble.
double eigen_lower_bound(const DensityMatrix& rho);

/// True iff one marginal is pure, i.e. rho = |psi><psi| (x) rho_other.
bool is_zero_assistance(const DensityMatrix& rho);

/// log2 min(d_a, d_b).
double capacity(BipartiteDims dims);

/// S(rho) - |S(tr_A rho) - S(tr_B rho)|, an upper bound on the gap between
/// assistance and formation.
double eof_gap_rhs(const DensityMatrix& rho);

BoundsReport bounds_report(const DensityMatrix& rho);

}  // namespace eoa
