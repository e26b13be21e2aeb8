// The explicit twelve-member ensemble for rho (x) rho, rho = diag(1/3, 1/3, 1/3, 0),
// whose average entanglement (~1.5506) exceeds 2 A(rho) = 4/3.

#include <cmath>
#include <numbers>

#include "eoa/bounds.hpp"
#include "eoa/ensembles.hpp"

namespace eoa {

namespace {

constexpr double kResidualLimit = 1e-8;
constexpr double kSuperadditiveMargin = 0.01;

// Index in the |a1 a2 b1 b2> basis, a1 most significant.
constexpr std::size_t idx(int a1, int a2, int b1, int b2) {
  return static_cast<std::size_t>(a1 * 8 + a2 * 4 + b1 * 2 + b2);
}

struct Amp {
  std::size_t index;
  Complex value;
};

PureState state(std::initializer_list<Amp> amps) {
  std::vector<Complex> v(16);
  for (const auto& a : amps) v[a.index] = a.value;
  return PureState({4, 4}, std::move(v));
}

Complex phase(double angle) { return std::polar(1.0, angle); }

DensityMatrix diag_third() { return DensityMatrix::diagonal({2, 2}, {1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0}); }

}  // namespace

AppendixConstants appendix_constants() {
  const long double k = 5.0L + std::sqrt(7.0L);
  return AppendixConstants{
      static_cast<double>(1.0L / std::sqrt(6.0L - 24.0L / k)),
      static_cast<double>(1.0L / std::sqrt(9.0L - 18.0L / k)),
      static_cast<double>(std::sqrt(k / 18.0L)),
      static_cast<double>(1.0L / std::sqrt(3.0L - 12.0L / k)),
      static_cast<double>(1.0L / 6.0L - 2.0L / (3.0L * k)),
      static_cast<double>(2.0L / (3.0L * k)),
  };
}

AppendixEnsemble appendix_ensemble() {
  const AppendixConstants k = appendix_constants();
  const double a = k.a;
  const double b = k.b;
  const double c = k.c;
  const double d = k.d;
  constexpr double pi = std::numbers::pi;

  const std::size_t i0011 = idx(0, 0, 1, 1);
  const std::size_t i0110 = idx(0, 1, 1, 0);
  const std::size_t i1001 = idx(1, 0, 0, 1);
  const std::size_t i1100 = idx(1, 1, 0, 0);
  const std::size_t i0000 = idx(0, 0, 0, 0);
  const std::size_t i0001 = idx(0, 0, 0, 1);
  const std::size_t i1000 = idx(1, 0, 0, 0);
  const std::size_t i0010 = idx(0, 0, 1, 0);
  const std::size_t i0100 = idx(0, 1, 0, 0);

  std::vector<EnsembleMember> members;
  auto add = [&](double p, PureState s) { members.push_back({p, std::move(s)}); };

  // Six members of weight alpha1: four with entanglement E_alpha, two with E_beta.
  add(k.alpha1, state({{i0011, a}, {i0110, b * phase(pi / 3)}, {i1001, b * phase(-pi / 3)}, {i1100, a}}));
  add(k.alpha1, state({{i0011, a}, {i0110, -b * phase(pi / 3)}, {i1001, -b * phase(-pi / 3)}, {i1100, a}}));
  add(k.alpha1, state({{i0011, a}, {i0110, b * phase(2 * pi / 3)}, {i1001, b * phase(-2 * pi / 3)}, {i1100, -a}}));
  add(k.alpha1, state({{i0011, a}, {i0110, -b * phase(2 * pi / 3)}, {i1001, -b * phase(-2 * pi / 3)}, {i1100, -a}}));
  add(k.alpha1, state({{i0000, d}, {i0110, b}, {i1001, b}}));
  add(k.alpha1, state({{i0000, d}, {i0110, -b}, {i1001, -b}}));

  // Six members of weight alpha2, all with entanglement E_gamma.
  add(k.alpha2, state({{i0001, c}, {i0110, b}, {i1000, c}}));
  add(k.alpha2, state({{i0001, c}, {i0110, b * phase(2 * pi / 3)}, {i1000, c * phase(-2 * pi / 3)}}));
  add(k.alpha2, state({{i0001, c}, {i0110, b * phase(4 * pi / 3)}, {i1000, c * phase(-4 * pi / 3)}}));
  add(k.alpha2, state({{i0010, c}, {i0100, c}, {i1001, b}}));
  add(k.alpha2, state({{i0010, c}, {i0100, c * phase(2 * pi / 3)}, {i1001, b * phase(-2 * pi / 3)}}));
  add(k.alpha2, state({{i0010, c}, {i0100, c * phase(4 * pi / 3)}, {i1001, b * phase(-4 * pi / 3)}}));

  const DensityMatrix rho = diag_third();
  return AppendixEnsemble{regroup(kron(rho.mat(), rho.mat()), {2, 2}, {2, 2}), Ensemble({4, 4}, std::move(members)),
                          k};
}

SuperadditivityReport verify_superadditivity() {
  const AppendixEnsemble app = appendix_ensemble();
  const double residual = max_abs_diff(ensemble_density(app.ensemble).mat(), app.target.mat());
  if (residual > kResidualLimit)
    throw VerificationError("verify_superadditivity: ensemble does not reproduce rho (x) rho (residual " +
                            std::to_string(residual) + ")");

  const BoundsReport single = bounds_report(diag_third());
  if (!single.exact_value)
    throw VerificationError("verify_superadditivity: single-copy value is not pinned by its bounds");

  SuperadditivityReport r{};
  r.consistency_residual = residual;
  r.single_copy_value = *single.exact_value;
  r.additive_value = 2.0 * r.single_copy_value;
  r.ensemble_value = average_entanglement(app.ensemble);
  r.entropic_upper = entropic_bound(app.target);
  r.gap = r.ensemble_value - r.additive_value;
  r.superadditive = r.ensemble_value > r.additive_value + kSuperadditiveMargin;
  return r;
}

}  // namespace eoa
