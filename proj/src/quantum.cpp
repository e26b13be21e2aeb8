#include "eoa/quantum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace eoa {

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

void check_dims(BipartiteDims dims) {
  if (dims.a == 0 || dims.b == 0) throw ValidationError("dimension: subsystem dimensions must be positive");
}

Matrix symmetrized(const Matrix& m) {
  Matrix h = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    h(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      h(i, j) = avg;
      h(j, i) = std::conj(avg);
    }
  }
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(BipartiteDims dims, Matrix mat) : dims_(dims) {
  check_dims(dims);
  const std::size_t n = dims.total();
  if (mat.rows() != n || mat.cols() != n)
    throw ValidationError("dimension: matrix is " + std::to_string(mat.rows()) + "x" + std::to_string(mat.cols()) +
                          ", dims require " + std::to_string(n) + "x" + std::to_string(n));
  if (!mat.all_finite()) throw ValidationError("finiteness: matrix has a non-finite entry");
  if (hermiticity_defect(mat) > kHermitianTol) throw ValidationError("hermiticity: matrix is not Hermitian");
  const Complex tr = mat.trace();
  if (std::abs(tr - Complex{1.0}) > kTraceTol)
    throw ValidationError("trace: trace is " + std::to_string(tr.real()) + ", expected 1");
  mat_ = symmetrized(mat);
  const auto eigs = herm_eigenvalues(mat_);
  if (eigs.front() < -kPsdClampTol)
    throw ValidationError("positivity: smallest eigenvalue " + std::to_string(eigs.front()) + " is negative");
}

DensityMatrix DensityMatrix::diagonal(BipartiteDims dims, std::span<const double> probs) {
  return DensityMatrix(dims, Matrix::diagonal(probs));
}

DensityMatrix DensityMatrix::diagonal(BipartiteDims dims, std::initializer_list<double> probs) {
  return diagonal(dims, std::span<const double>(probs.begin(), probs.size()));
}

DensityMatrix DensityMatrix::product(const Matrix& rho_a, const Matrix& rho_b) {
  return DensityMatrix({rho_a.rows(), rho_b.rows()}, kron(rho_a, rho_b));
}

bool DensityMatrix::is_diagonal(double tol) const {
  for (std::size_t i = 0; i < mat_.rows(); ++i)
    for (std::size_t j = 0; j < mat_.cols(); ++j)
      if (i != j && std::abs(mat_(i, j)) > tol) return false;
  return true;
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(BipartiteDims dims, std::vector<Complex> vec) : dims_(dims), vec_(std::move(vec)) {
  check_dims(dims);
  if (vec_.size() != dims.total()) throw ValidationError("dimension: state vector length does not match dims");
  double n2 = 0.0;
  for (const auto& z : vec_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ValidationError("PureState: non-finite amplitude");
    n2 += std::norm(z);
  }
  if (std::abs(std::sqrt(n2) - 1.0) > kNormTol) throw ValidationError("norm: state vector is not normalized");
}

PureState PureState::normalized(BipartiteDims dims, std::vector<Complex> vec) {
  double n2 = 0.0;
  for (const auto& z : vec) n2 += std::norm(z);
  if (!(n2 > 0.0)) throw ValidationError("norm: cannot normalize the zero vector");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& z : vec) z *= inv;
  return PureState(dims, std::move(vec));
}

PureState PureState::basis(BipartiteDims dims, std::size_t a, std::size_t b) {
  check_dims(dims);
  if (a >= dims.a || b >= dims.b) throw ValidationError("PureState::basis: index out of range");
  std::vector<Complex> v(dims.total());
  v[a * dims.b + b] = 1.0;
  return PureState(dims, std::move(v));
}

Matrix PureState::projector() const { return Matrix::outer(vec_, vec_); }

Matrix PureState::coefficients() const { return Matrix(dims_.a, dims_.b, vec_); }

DensityMatrix PureState::density() const { return DensityMatrix(dims_, projector()); }

// ---------------------------------------------------------------------------
// Ensemble

Ensemble::Ensemble(BipartiteDims dims, std::vector<EnsembleMember> members)
    : dims_(dims), members_(std::move(members)) {
  check_dims(dims);
  if (members_.empty()) throw ValidationError("Ensemble: no members");
  double total = 0.0;
  for (const auto& m : members_) {
    if (!(m.p > 0.0 && m.p <= 1.0 + 1e-12)) throw ValidationError("Ensemble: probability outside (0, 1]");
    if (m.state.dims() != dims) throw ValidationError("dimension: ensemble member dims differ");
    total += m.p;
  }
  if (std::abs(total - 1.0) > 1e-10) throw ValidationError("Ensemble: probabilities do not sum to 1");
}

// ---------------------------------------------------------------------------
// Traces and entropies

Matrix partial_trace(const Matrix& rho, BipartiteDims dims, Side side) {
  check_dims(dims);
  if (rho.rows() != dims.total() || rho.cols() != dims.total())
    throw ValidationError("dimension: partial_trace input does not match dims");
  const std::size_t da = dims.a;
  const std::size_t db = dims.b;
  if (side == Side::over_b) {
    Matrix r(da, da);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j)
        for (std::size_t k = 0; k < db; ++k) r(i, j) += rho(i * db + k, j * db + k);
    return r;
  }
  Matrix r(db, db);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t k = 0; k < da; ++k) r(i, j) += rho(k * db + i, k * db + j);
  return r;
}

Matrix partial_trace(const DensityMatrix& rho, Side side) { return partial_trace(rho.mat(), rho.dims(), side); }

double von_neumann_entropy(const Matrix& m) {
  const auto eigs = herm_eigenvalues(m);
  if (eigs.front() < -kPsdClampTol) throw ValidationError("positivity: negative eigenvalue in entropy argument");
  double s = 0.0;
  for (double l : eigs) s -= xlog2x(std::max(l, 0.0));
  return std::max(s, 0.0);
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("binary_entropy: argument outside [0, 1]");
  return std::max(-xlog2x(x) - xlog2x(1.0 - x), 0.0) + 0.0;
}

double shannon_entropy(std::span<const double> p) {
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw ValidationError("shannon_entropy: negative or NaN probability");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError("shannon_entropy: probabilities do not sum to 1");
  double h = 0.0;
  for (double x : p) h -= xlog2x(x);
  return std::max(h, 0.0);
}

double shannon_entropy(std::initializer_list<double> p) {
  return shannon_entropy(std::span<const double>(p.begin(), p.size()));
}

namespace {

// Spectrum of the smaller reduced matrix of the (unnormalized) vector v.
// Writes min(d_a, d_b) eigenvalues into `out`.
void reduced_spectrum(std::span<const Complex> v, BipartiteDims dims, std::span<double> out,
                      std::span<Complex> scratch) {
  const std::size_t da = dims.a;
  const std::size_t db = dims.b;
  if (da <= db) {
    // R = M M^dagger, M(i, k) = v[i * db + k]
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = i; j < da; ++j) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < db; ++k) s += v[i * db + k] * std::conj(v[j * db + k]);
        scratch[i * da + j] = s;
        scratch[j * da + i] = std::conj(s);
      }
    detail::hermitian_eigenvalues(scratch.first(da * da), da, out);
  } else {
    // R = M^T conj(M): the tr_A block, same nonzero spectrum.
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t j = i; j < db; ++j) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < da; ++k) s += v[k * db + i] * std::conj(v[k * db + j]);
        scratch[i * db + j] = s;
        scratch[j * db + i] = std::conj(s);
      }
    detail::hermitian_eigenvalues(scratch.first(db * db), db, out);
  }
}

constexpr std::size_t kStackSide = 8;

}  // namespace

std::vector<double> schmidt_probabilities(const PureState& psi) {
  const std::size_t d = std::min(psi.dims().a, psi.dims().b);
  std::vector<Complex> scratch(d * d);
  std::vector<double> mu(d);
  reduced_spectrum(psi.vec(), psi.dims(), mu, scratch);
  for (auto& x : mu) x = std::max(x, 0.0);
  std::sort(mu.begin(), mu.end(), std::greater<>());
  return mu;
}

double pure_entanglement(const PureState& psi) {
  double s = 0.0;
  for (double x : schmidt_probabilities(psi)) s -= xlog2x(x);
  return std::max(s, 0.0);
}

double weighted_entanglement(std::span<const Complex> v, BipartiteDims dims) {
  const std::size_t d = std::min(dims.a, dims.b);
  std::array<Complex, kStackSide * kStackSide> stack_scratch;
  std::array<double, kStackSide> stack_mu;
  std::vector<Complex> heap_scratch;
  std::vector<double> heap_mu;
  std::span<Complex> scratch = stack_scratch;
  std::span<double> mu = stack_mu;
  if (d > kStackSide) {
    heap_scratch.resize(d * d);
    heap_mu.resize(d);
    scratch = heap_scratch;
    mu = heap_mu;
  }
  reduced_spectrum(v, dims, mu.first(d), scratch);
  double norm2 = 0.0;
  double s = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double x = std::max(mu[k], 0.0);
    norm2 += x;
    s -= xlog2x(x);
  }
  if (norm2 <= 0.0) return 0.0;
  return std::max(s + xlog2x(norm2), 0.0);
}

double average_entanglement(const Ensemble& e) {
  // Summed in sorted order: independent of member order.
  std::vector<double> terms;
  terms.reserve(e.size());
  for (const auto& m : e.members()) terms.push_back(m.p * pure_entanglement(m.state));
  std::sort(terms.begin(), terms.end());
  return std::accumulate(terms.begin(), terms.end(), 0.0);
}

DensityMatrix ensemble_density(const Ensemble& e) {
  const std::size_t n = e.dims().total();
  Matrix rho(n, n);
  for (const auto& m : e.members()) {
    const auto v = m.state.vec();
    for (std::size_t i = 0; i < n; ++i) {
      const Complex pvi = m.p * v[i];
      for (std::size_t j = 0; j < n; ++j) rho(i, j) += pvi * std::conj(v[j]);
    }
  }
  return DensityMatrix(e.dims(), std::move(rho));
}

Ensemble eigen_ensemble(const DensityMatrix& rho, double cutoff) {
  const HermEig eig = herm_eig(rho.mat());
  std::vector<EnsembleMember> members;
  double total = 0.0;
  for (std::size_t k = eig.values.size(); k-- > 0;) {
    if (eig.values[k] <= cutoff) continue;
    members.push_back({eig.values[k], PureState::normalized(rho.dims(), eig.vectors.column(k))});
    total += eig.values[k];
  }
  // Dropped near-zero eigenvalues leave a deficit of at most n * cutoff.
  for (auto& m : members) m.p /= total;
  return Ensemble(rho.dims(), std::move(members));
}

std::size_t rank(const DensityMatrix& rho, double cutoff) {
  const auto eigs = herm_eigenvalues(rho.mat());
  return static_cast<std::size_t>(std::count_if(eigs.begin(), eigs.end(), [&](double l) { return l > cutoff; }));
}

DensityMatrix regroup(const Matrix& rho12, BipartiteDims dims1, BipartiteDims dims2) {
  check_dims(dims1);
  check_dims(dims2);
  const std::size_t n = dims1.total() * dims2.total();
  if (rho12.rows() != n || rho12.cols() != n) throw ValidationError("dimension: regroup input size mismatch");

  // Source index ((a1 db1 + b1) da2 + a2) db2 + b2 -> target (a1 da2 + a2)(db1 db2) + b1 db2 + b2.
  std::vector<std::size_t> target(n);
  for (std::size_t a1 = 0; a1 < dims1.a; ++a1)
    for (std::size_t b1 = 0; b1 < dims1.b; ++b1)
      for (std::size_t a2 = 0; a2 < dims2.a; ++a2)
        for (std::size_t b2 = 0; b2 < dims2.b; ++b2) {
          const std::size_t src = ((a1 * dims1.b + b1) * dims2.a + a2) * dims2.b + b2;
          target[src] = (a1 * dims2.a + a2) * (dims1.b * dims2.b) + b1 * dims2.b + b2;
        }
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(target[i], target[j]) = rho12(i, j);
  return DensityMatrix({dims1.a * dims2.a, dims1.b * dims2.b}, std::move(out));
}

}  // namespace eoa
