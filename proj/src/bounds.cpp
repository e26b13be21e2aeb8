#include "eoa/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "eoa/magic.hpp"

namespace eoa {

namespace {

constexpr double kDiagonalTol = 1e-10;

void require_diagonal_two_qubit(const DensityMatrix& rho, const char* who) {
  if (rho.dims() != BipartiteDims{2, 2}) throw UnsupportedError(std::string(who) + ": requires two qubits (dims 2 2)");
  if (!rho.is_diagonal(kDiagonalTol))
    throw UnsupportedError(std::string(who) + ": requires a density matrix diagonal in the product basis");
}

double purity(const Matrix& m) {
  double s = 0.0;
  for (const auto& z : m.data()) s += std::norm(z);
  return s;
}

// Weight-w contribution w H2(x / w) of one pair group.
double group_term(double x, double y) {
  const double w = x + y;
  if (w <= 0.0) return 0.0;
  return w * binary_entropy(std::clamp(x / w, 0.0, 1.0));
}

}  // namespace

double entropic_bound(const DensityMatrix& rho) {
  return std::min(von_neumann_entropy(partial_trace(rho, Side::over_a)),
                  von_neumann_entropy(partial_trace(rho, Side::over_b)));
}

double fidelity_bound(const DensityMatrix& rho) {
  if (rho.dims() != BipartiteDims{2, 2}) throw UnsupportedError("fidelity_bound: requires two qubits (dims 2 2)");
  return fidelity(rho, tilde(rho));
}

double diagonal_lower_bound(const DensityMatrix& rho) {
  require_diagonal_two_qubit(rho, "diagonal_lower_bound");
  const Matrix& m = rho.mat();
  const double a1 = std::max(m(0, 0).real(), 0.0);
  const double a2 = std::max(m(1, 1).real(), 0.0);
  const double a3 = std::max(m(2, 2).real(), 0.0);
  const double a4 = std::max(m(3, 3).real(), 0.0);
  return group_term(a1, a4) + group_term(a2, a3);
}

Ensemble diagonal_decomposition(const DensityMatrix& rho) {
  require_diagonal_two_qubit(rho, "diagonal_decomposition");
  const Matrix& m = rho.mat();
  double alpha[4];
  for (std::size_t i = 0; i < 4; ++i) alpha[i] = std::max(m(i, i).real(), 0.0);

  std::vector<EnsembleMember> members;
  auto add_pair = [&](std::size_t i, std::size_t j) {
    const double w = alpha[i] + alpha[j];
    if (w <= 0.0) return;
    const double ci = std::sqrt(alpha[i] / w);
    const double cj = std::sqrt(alpha[j] / w);
    for (const double sign : {1.0, -1.0}) {
      std::vector<Complex> v(4);
      v[i] = ci;
      v[j] = sign * cj;
      members.push_back({w / 2.0, PureState::normalized({2, 2}, std::move(v))});
    }
  };
  add_pair(0, 3);
  add_pair(1, 2);
  return Ensemble({2, 2}, std::move(members));
}

double eigen_lower_bound(const DensityMatrix& rho) { return average_entanglement(eigen_ensemble(rho)); }

bool is_zero_assistance(const DensityMatrix& rho) {
  return purity(partial_trace(rho, Side::over_b)) >= 1.0 - kPurityTol ||
         purity(partial_trace(rho, Side::over_a)) >= 1.0 - kPurityTol;
}

double capacity(BipartiteDims dims) { return std::log2(static_cast<double>(std::min(dims.a, dims.b))); }

double eof_gap_rhs(const DensityMatrix& rho) {
  const double s = von_neumann_entropy(rho.mat());
  const double sa = von_neumann_entropy(partial_trace(rho, Side::over_b));
  const double sb = von_neumann_entropy(partial_trace(rho, Side::over_a));
  return s - std::abs(sa - sb);
}

BoundsReport bounds_report(const DensityMatrix& rho) {
  BoundsReport r;
  r.entropic_upper = entropic_bound(rho);
  r.eigen_lower = eigen_lower_bound(rho);
  r.capacity = capacity(rho.dims());
  r.zero_assistance = is_zero_assistance(rho);
  r.eof_gap_rhs = eof_gap_rhs(rho);
  if (rho.dims() == BipartiteDims{2, 2}) {
    r.fidelity_upper = fidelity_bound(rho);
    if (rho.is_diagonal(kDiagonalTol)) r.diagonal_lower = diagonal_lower_bound(rho);
  }

  double best_lower = r.eigen_lower;
  if (r.diagonal_lower) best_lower = std::max(best_lower, *r.diagonal_lower);
  double best_upper = std::min(r.entropic_upper, r.capacity);
  if (r.fidelity_upper) best_upper = std::min(best_upper, *r.fidelity_upper);
  if (best_lower >= best_upper - kExactTol) r.exact_value = best_lower;
  return r;
}

}  // namespace eoa
