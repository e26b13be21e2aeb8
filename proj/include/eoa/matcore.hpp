// Dense complex linear algebra for the small (<= 64x64) matrices used by
// the entanglement-of-assistance tools.
//
// Matrices are row-major and own their storage. Every routine checks
// dimensions and throws ValidationError on malformed input; nothing here
// keeps global state.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eoa {

using Complex = std::complex<double>;

/// Input violates a documented precondition (shape, Hermiticity, trace, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well formed but outside what an operation supports
/// (e.g. a two-qubit-only bound applied to a qutrit pair).
class UnsupportedError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);
  static Matrix diagonal(std::initializer_list<double> diag);
  /// Outer product |u><v|.
  static Matrix outer(std::span<const Complex> u, std::span<const Complex> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  Matrix adjoint() const;
  Matrix conj() const;
  Matrix transpose() const;
  Complex trace() const;
  std::vector<Complex> column(std::size_t j) const;

  double frobenius_norm() const;
  /// Largest entry modulus.
  double max_abs() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Complex s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Matrix-vector product.
std::vector<Complex> apply(const Matrix& m, std::span<const Complex> v);

/// Max-entry distance between two matrices of equal shape.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// max |m - m^dagger| over entries; m must be square.
double hermiticity_defect(const Matrix& m);

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascending; column k
/// of `vectors` belongs to `values[k]`.
struct HermEig {
  std::vector<double> values;
  Matrix vectors;
};

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdClampTol = 1e-8;

/// Cyclic complex Jacobi. Inputs within kHermitianTol of Hermitian are
/// symmetrized first; anything further off is rejected.
HermEig herm_eig(const Matrix& m);

/// Eigenvalues only (ascending). Householder tridiagonalization followed by
/// implicit QL; same input checks as herm_eig.
std::vector<double> herm_eigenvalues(const Matrix& m);

namespace detail {
// Unchecked in-place variant for hot loops: `a` is an n x n row-major
// Hermitian buffer (destroyed), `out` receives n ascending eigenvalues.
void hermitian_eigenvalues(std::span<Complex> a, std::size_t n, std::span<double> out);
}  // namespace detail

/// Principal square root of a PSD Hermitian matrix. Eigenvalues in
/// [-kPsdClampTol, 0) are clamped to zero; more negative ones throw.
Matrix psd_sqrt(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);

/// Random unitary built from n(n-1)/2 seeded complex Givens
/// rotations and a diagonal phase layer. Bit-identical for equal (n, seed).
Matrix random_unitary(std::size_t n, std::uint64_t seed);

}  // namespace eoa
