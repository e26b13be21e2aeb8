#include "eoa/magic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace eoa {

namespace {

constexpr double kRankOneTol = 1e-8;
constexpr double kOverlapClamp = 1e-10;

Matrix build_magic_basis() {
  const double h = 1.0 / std::numbers::sqrt2;
  const Complex ih{0.0, h};
  // 1 / (-i sqrt2) = i / sqrt2
  return Matrix{
      {h, ih, 0.0, 0.0},
      {0.0, 0.0, ih, h},
      {0.0, 0.0, ih, -h},
      {h, -ih, 0.0, 0.0},
  };
}

void require_two_qubit(const Matrix& x, const char* who) {
  if (x.rows() != 4 || x.cols() != 4) throw UnsupportedError(std::string(who) + ": requires a 4x4 two-qubit operator");
}

// tr(pi pi~), validated as a trace-one rank-one projector.
double projector_overlap(const Matrix& pi, const char* who) {
  require_two_qubit(pi, who);
  const auto eigs = herm_eigenvalues(pi);
  if (std::abs(eigs[3] - 1.0) > kRankOneTol || std::abs(eigs[0]) > kRankOneTol || std::abs(eigs[1]) > kRankOneTol ||
      std::abs(eigs[2]) > kRankOneTol)
    throw ValidationError(std::string(who) + ": input is not a rank-one projector");
  const Matrix pt = tilde(pi);
  double overlap = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) overlap += (pi(i, j) * pt(j, i)).real();
  if (overlap < 0.0 && overlap >= -kOverlapClamp) overlap = 0.0;
  return std::clamp(overlap, 0.0, 1.0);
}

}  // namespace

const Matrix& magic_basis() {
  static const Matrix m = build_magic_basis();
  return m;
}

Matrix tilde(const Matrix& x) {
  require_two_qubit(x, "tilde");
  if (hermiticity_defect(x) > kHermitianTol) throw ValidationError("tilde: input is not Hermitian");
  const Matrix& m = magic_basis();
  const Matrix madj = m.adjoint();
  return m * (madj * x * m).conj() * madj;
}

DensityMatrix tilde(const DensityMatrix& rho) {
  if (rho.dims() != BipartiteDims{2, 2}) throw UnsupportedError("tilde: requires two qubits (dims 2 2)");
  return DensityMatrix(rho.dims(), tilde(rho.mat()));
}

namespace {

// Eigenvalues at rounding level would contribute sqrt(eps) each; treat them
// as exact zeros.
double noise_floor(const Matrix& m) {
  return 8.0 * static_cast<double>(m.rows()) * std::numeric_limits<double>::epsilon() * m.frobenius_norm();
}

Matrix floored_sqrt(const Matrix& m) {
  const HermEig eig = herm_eig(m);
  const double floor = noise_floor(m);
  const std::size_t n = m.rows();
  Matrix r(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (eig.values[k] <= floor) continue;
    const double root = std::sqrt(eig.values[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = root * eig.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j) r(i, j) += vik * std::conj(eig.vectors(j, k));
    }
  }
  return r;
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dims() != sigma.dims()) throw ValidationError("dimension: fidelity arguments have different dims");
  const Matrix root = floored_sqrt(rho.mat());
  Matrix inner = root * sigma.mat() * root;
  inner = 0.5 * (inner + inner.adjoint());
  const double floor = noise_floor(inner);
  double f = 0.0;
  for (double x : herm_eigenvalues(inner))
    if (x > floor) f += std::sqrt(x);
  return std::clamp(f, 0.0, 1.0);
}

double lambda1_via_tilde(const Matrix& projector) {
  const double overlap = projector_overlap(projector, "lambda1_via_tilde");
  return 0.5 * (1.0 + std::sqrt(1.0 - overlap));
}

double pure_tilde_fidelity(const Matrix& projector) {
  return std::sqrt(projector_overlap(projector, "pure_tilde_fidelity"));
}

}  // namespace eoa
