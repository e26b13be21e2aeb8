// Test-only generators and brute-force oracles. Nothing here calls into the
// routines under test except the value types.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "eoa/matcore.hpp"
#include "eoa/quantum.hpp"

namespace eoa::testing {

inline Complex gaussian_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

inline Matrix ginibre(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  Matrix g(rows, cols);
  for (auto& z : g.data()) z = gaussian_complex(rng);
  return g;
}

inline Matrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const Matrix g = ginibre(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

/// rho = G G^dagger / tr, G of shape n x k (rank <= k).
inline DensityMatrix random_density(BipartiteDims dims, std::mt19937_64& rng, std::size_t k = 0) {
  const std::size_t n = dims.total();
  const Matrix g = ginibre(n, k == 0 ? n : k, rng);
  Matrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return DensityMatrix(dims, rho);
}

inline std::vector<Complex> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::vector<Complex> v(n);
  for (auto& z : v) z = gaussian_complex(rng);
  return v;
}

inline PureState random_pure(BipartiteDims dims, std::mt19937_64& rng) {
  return PureState::normalized(dims, random_vector(dims.total(), rng));
}

/// Unitary from Gram-Schmidt on a Ginibre matrix (independent of random_unitary).
inline Matrix gram_schmidt_unitary(std::size_t n, std::mt19937_64& rng) {
  Matrix g = ginibre(n, n, rng);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(g(i, k)) * g(i, j);
      for (std::size_t i = 0; i < n; ++i) g(i, j) -= dot * g(i, k);
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += std::norm(g(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) g(i, j) /= nrm;
  }
  return g;
}

inline double max_unitarity_error(const Matrix& u) {
  return max_abs_diff(u.adjoint() * u, Matrix::identity(u.cols()));
}

/// Binary entropy written out independently of the library.
inline double h2(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

/// Largest eigenvalue of a 2x2 Hermitian matrix, closed form.
inline double largest_eigenvalue_2x2(const Matrix& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  return 0.5 * (a + d) + std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
}

inline std::vector<Complex> bell_vector() {
  const double r = 1.0 / std::sqrt(2.0);
  return {r, 0.0, 0.0, r};
}

inline DensityMatrix diag_third() { return DensityMatrix::diagonal({2, 2}, {1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0}); }

/// Convex combination of the four magic-basis projectors with random weights.
/// Built from explicit Bell vectors, not from the library's magic basis.
inline DensityMatrix random_magic_mixture(std::mt19937_64& rng) {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i{0.0, 1.0};
  const std::vector<std::vector<Complex>> bells = {
      {r, 0.0, 0.0, r}, {i * r, 0.0, 0.0, -i * r}, {0.0, i * r, i * r, 0.0}, {0.0, r, -r, 0.0}};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double w[4];
  double total = 0.0;
  for (double& x : w) total += (x = u(rng));
  Matrix rho(4, 4);
  for (std::size_t k = 0; k < 4; ++k) rho += (w[k] / total) * Matrix::outer(bells[k], bells[k]);
  return DensityMatrix({2, 2}, rho);
}

}  // namespace eoa::testing
