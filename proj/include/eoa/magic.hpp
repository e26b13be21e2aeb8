// Two-qubit magic basis, the Hill-Wootters tilde and Uhlmann fidelity.

#pragma once

#include "eoa/matcore.hpp"
#include "eoa/quantum.hpp"

namespace eoa {

/// Columns e1..e4:
///   e1 = (|00> + |11>) / sqrt2        e2 = (|00> - |11>) / (-i sqrt2)
///   e3 = (|01> + |10>) / (-i sqrt2)   e4 = (|01> - |10>) / sqrt2
const Matrix& magic_basis();

/// Complex conjugation in the magic basis: M conj(M^dagger x M) M^dagger.
/// Requires a Hermitian 4x4 input.
Matrix tilde(const Matrix& x);
DensityMatrix tilde(const DensityMatrix& rho);

/// Uhlmann fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)), clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Largest eigenvalue of tr_B(pi) for a two-qubit pure-state projector,
/// from (1 + sqrt(1 - tr(pi pi~))) / 2.
double lambda1_via_tilde(const Matrix& projector);

/// F(pi, pi~) = sqrt(tr(pi pi~)) for a pure-state projector.
double pure_tilde_fidelity(const Matrix& projector);

}  // namespace eoa
