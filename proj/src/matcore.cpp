#include "eoa/matcore.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace eoa {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw ValidationError(what);
}

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagRelTol = 1e-13;

double off_diagonal_norm(std::span<const Complex> a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::norm(a[i * n + j]);
  return std::sqrt(s);
}

double frobenius(std::span<const Complex> a) {
  double s = 0.0;
  for (const auto& z : a) s += std::norm(z);
  return std::sqrt(s);
}

// Cyclic Jacobi sweeps on the Hermitian buffer `a`. When `v` is non-empty it
// accumulates the rotations (v <- v J), starting from whatever it holds.
void jacobi(std::span<Complex> a, std::size_t n, std::span<Complex> v) {
  const double target = kOffDiagRelTol * frobenius(a);
  for (int sweep = 0;; ++sweep) {
    if (off_diagonal_norm(a, n) <= target) return;
    if (sweep == kMaxSweeps) throw ValidationError("herm_eig: Jacobi iteration did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a[p * n + q];
        const double b = std::abs(apq);
        if (b == 0.0) continue;
        const Complex phase = apq / b;  // e^{i alpha}
        const double tau = (a[q * n + q].real() - a[p * n + p].real()) / (2.0 * b);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J = [[c, s e^{ia}], [-s e^{-ia}, c]] on the (p, q) plane.
        const Complex jpq = s * phase;
        const Complex jqp = -s * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a[k * n + p];
          const Complex akq = a[k * n + q];
          a[k * n + p] = c * akp + jqp * akq;
          a[k * n + q] = jpq * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a[p * n + k];
          const Complex aqk = a[q * n + k];
          a[p * n + k] = c * apk + std::conj(jqp) * aqk;
          a[q * n + k] = std::conj(jpq) * apk + c * aqk;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        a[p * n + p] = a[p * n + p].real();
        a[q * n + q] = a[q * n + q].real();
        if (!v.empty()) {
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = v[k * n + p];
            const Complex vkq = v[k * n + q];
            v[k * n + p] = c * vkp + jqp * vkq;
            v[k * n + q] = jpq * vkp + c * vkq;
          }
        }
      }
    }
  }
}

std::vector<std::size_t> ascending_order(std::span<const double> vals) {
  std::vector<std::size_t> idx(vals.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return vals[i] < vals[j]; });
  return idx;
}

Matrix checked_symmetrized(const Matrix& m, const char* who) {
  if (!m.is_square() || m.empty()) throw ValidationError(std::string(who) + ": matrix must be square and non-empty");
  if (!m.all_finite()) throw ValidationError(std::string(who) + ": non-finite entry");
  if (hermiticity_defect(m) > kHermitianTol)
    throw ValidationError(std::string(who) + ": matrix is not Hermitian");
  Matrix h = m;
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      h(i, j) = avg;
      h(j, i) = std::conj(avg);
    }
  }
  return h;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  require(data_.size() == rows * cols, "Matrix: entry count does not match shape");
  require(all_finite(), "Matrix: non-finite entry");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, "Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require(all_finite(), "Matrix: non-finite entry");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  require(m.all_finite(), "Matrix: non-finite entry");
  return m;
}

Matrix Matrix::diagonal(std::initializer_list<double> diag) {
  return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

Matrix Matrix::outer(std::span<const Complex> u, std::span<const Complex> v) {
  Matrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

Matrix Matrix::conj() const {
  Matrix r = *this;
  for (auto& z : r.data_) z = std::conj(z);
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

Complex Matrix::trace() const {
  require(is_square(), "trace: matrix must be square");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

std::vector<Complex> Matrix::column(std::size_t j) const {
  require(j < cols_, "column: index out of range");
  std::vector<Complex> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

double Matrix::frobenius_norm() const { return frobenius(data_); }

double Matrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_, "operator+: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_, "operator-: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols_ == b.rows_, "operator*: inner dimensions differ");
  Matrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

std::vector<Complex> apply(const Matrix& m, std::span<const Complex> v) {
  require(m.cols() == v.size(), "apply: dimension mismatch");
  std::vector<Complex> r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "max_abs_diff: shape mismatch");
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a.data()[k] - b.data()[k]));
  return d;
}

double hermiticity_defect(const Matrix& m) {
  require(m.is_square(), "hermiticity_defect: matrix must be square");
  double d = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

HermEig herm_eig(const Matrix& m) {
  Matrix a = checked_symmetrized(m, "herm_eig");
  const std::size_t n = a.rows();
  Matrix v = Matrix::identity(n);
  jacobi(a.data(), n, v.data());

  std::vector<double> raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = a(i, i).real();
  const auto order = ascending_order(raw);
  HermEig out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = raw[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> herm_eigenvalues(const Matrix& m) {
  Matrix a = checked_symmetrized(m, "herm_eigenvalues");
  std::vector<double> out(a.rows());
  detail::hermitian_eigenvalues(a.data(), a.rows(), out);
  return out;
}

namespace detail {

void hermitian_eigenvalues(std::span<Complex> a, std::size_t n, std::span<double> out) {
  if (n == 1) {
    out[0] = a[0].real();
    return;
  }
  if (n == 2) {
    // Closed form for the 2x2 case; dominates the optimizer's inner loop.
    const double p = a[0].real();
    const double q = a[3].real();
    const double mean = 0.5 * (p + q);
    const double half_gap = std::hypot(0.5 * (p - q), std::abs(a[1]));
    out[0] = mean - half_gap;
    out[1] = mean + half_gap;
    return;
  }

  // Householder reduction to Hermitian tridiagonal form. Step k zeroes
  // column k below the subdiagonal: A22 <- H A22 H, H = I - beta v v^dagger.
  std::array<Complex, 16> vbuf;
  std::array<Complex, 16> wbuf;
  std::vector<Complex> vheap;
  std::vector<Complex> wheap;
  std::span<Complex> v = vbuf;
  std::span<Complex> w = wbuf;
  if (n > vbuf.size()) {
    vheap.resize(n);
    wheap.resize(n);
    v = vheap;
    w = wheap;
  }
  std::array<double, 16> ebuf{};
  std::vector<double> eheap;
  std::span<double> e = ebuf;
  if (n > ebuf.size()) {
    eheap.assign(n, 0.0);
    e = eheap;
  }
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;  // trailing block size
    const std::size_t o = k + 1;
    double alpha2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) alpha2 += std::norm(a[(o + i) * n + k]);
    const double alpha = std::sqrt(alpha2);
    const Complex x0 = a[o * n + k];
    if (alpha == 0.0 || alpha2 == std::norm(x0)) {
      e[k] = std::abs(x0);
      continue;
    }
    const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    for (std::size_t i = 0; i < m; ++i) v[i] = a[(o + i) * n + k];
    v[0] += phase * alpha;
    double vv = 0.0;
    for (std::size_t i = 0; i < m; ++i) vv += std::norm(v[i]);
    const double beta = 2.0 / vv;
    // w = beta A v, then w -= (beta/2)(v^dagger w) v.
    Complex vw = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += a[(o + i) * n + o + j] * v[j];
      w[i] = beta * s;
      vw += std::conj(v[i]) * w[i];
    }
    const double kk = 0.5 * beta * vw.real();
    for (std::size_t i = 0; i < m; ++i) w[i] -= kk * v[i];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        a[(o + i) * n + o + j] -= v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]);
    e[k] = alpha;  // |-phase * alpha|
  }
  e[n - 2] = std::abs(a[(n - 1) * n + n - 2]);
  e[n - 1] = 0.0;
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i * n + i].real();

  // hypot without the slow path unless the magnitudes call for it.
  const auto pythag = [](double x, double y) {
    const double big = std::max(std::abs(x), std::abs(y));
    return big < 1e150 ? std::sqrt(x * x + y * y) : std::hypot(x, y);
  };

  // A diagonal phase similarity makes the subdiagonal real and nonnegative;
  // the spectrum then comes from implicit QL on (out, e).
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(out[m]) + std::abs(out[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxSweeps) throw ValidationError("herm_eigenvalues: QL iteration did not converge");
        double g = (out[l + 1] - out[l]) / (2.0 * e[l]);
        double r = pythag(g, 1.0);
        g = out[m] - out[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        std::size_t i = m;
        bool underflow = false;
        while (i-- > l) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = pythag(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            out[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = out[i + 1] - p;
          r = (out[i] - g) * s + 2.0 * c * b;
          p = s * r;
          out[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        out[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(n));
}

}  // namespace detail

Matrix psd_sqrt(const Matrix& m) {
  const HermEig eig = herm_eig(m);
  const std::size_t n = m.rows();
  if (eig.values.front() < -kPsdClampTol) throw ValidationError("psd_sqrt: matrix is not positive semidefinite");
  Matrix r(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double root = std::sqrt(std::max(eig.values[k], 0.0));
    if (root == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = root * eig.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j) r(i, j) += vik * std::conj(eig.vectors(j, k));
    }
  }
  return r;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

Matrix random_unitary(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ValidationError("random_unitary: n must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  Matrix u(n, n);
  for (std::size_t i = 0; i < n; ++i) u(i, i) = std::polar(1.0, angle(rng));

  // u <- G(p, q) u, so rows p and q mix.
  for (std::size_t p = 0; p + 1 < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) {
      const double theta = angle(rng);
      const double phi = angle(rng);
      const double c = std::cos(theta);
      const Complex s = std::polar(std::sin(theta), phi);
      for (std::size_t k = 0; k < n; ++k) {
        const Complex up = u(p, k);
        const Complex uq = u(q, k);
        u(p, k) = c * up + s * uq;
        u(q, k) = -std::conj(s) * up + c * uq;
      }
    }
  return u;
}

}  // namespace eoa
