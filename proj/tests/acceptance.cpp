// Acceptance run: one line per criterion, "[PASS]" or "[FAIL]", with the
// measured values, tolerances and wall time against each time budget.
// Exit status is the number of failing criteria.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "eoa/bounds.hpp"
#include "eoa/ensembles.hpp"
#include "eoa/magic.hpp"
#include "eoa/qio.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace eoa;
namespace t = eoa::testing;
using nlohmann::json;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " FAILED{" << what << "}";
    }
  }
  template <typename T>
  void note(const std::string& key, const T& value) {
    detail << ' ' << key << '=' << value;
  }
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<void(Check&)>& body) {
  Check c;
  c.detail.precision(12);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(secs < budget_s, "runtime over budget");
  if (!c.ok) ++failures;
  std::printf("[%s] criterion %d: %s |%s | %.2f s (budget %.0f s)\n", c.ok ? "PASS" : "FAIL", id, title,
              c.detail.str().c_str(), secs, budget_s);
  std::fflush(stdout);
}

double sum_probabilities(const Ensemble& e) {
  double s = 0.0;
  for (const auto& m : e.members()) s += m.p;
  return s;
}

struct Shell {
  int code;
  std::string out;
};

Shell shell(const std::string& args) {
  const std::string cmd = std::string("\"") + EOA_CLI_PATH + "\" " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed: " + cmd);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture(const char* name) { return std::string("\"") + EOA_DATA_DIR + "/" + name + "\""; }

}  // namespace

int main() {
  const DensityMatrix third = t::diag_third();

  criterion(1, "twelve-member ensemble reproduces rho (x) rho", 1.0, [&](Check& c) {
    const AppendixEnsemble app = appendix_ensemble();
    const DensityMatrix target = regroup(kron(third.mat(), third.mat()), {2, 2}, {2, 2});
    const double residual = max_abs_diff(ensemble_density(app.ensemble).mat(), target.mat());
    double worst_norm = 0.0;
    for (const auto& m : app.ensemble.members()) {
      double n = 0.0;
      for (const auto& z : m.state.vec()) n += std::norm(z);
      worst_norm = std::max(worst_norm, std::abs(n - 1.0));
    }
    const double psum = std::abs(sum_probabilities(app.ensemble) - 1.0);
    c.note("residual", residual);
    c.note("norm_err", worst_norm);
    c.note("prob_sum_err", psum);
    c.expect(app.ensemble.size() == 12, "12 members");
    c.expect(max_abs_diff(app.target.mat(), target.mat()) < 1e-15, "target");
    c.expect(residual < 1e-10, "residual < 1e-10");
    c.expect(worst_norm < 1e-12, "normalized within 1e-12");
    c.expect(psum < 1e-12, "probabilities sum to 1 within 1e-12");
  });

  criterion(2, "member and average entanglements", 1.0, [&](Check& c) {
    const AppendixEnsemble app = appendix_ensemble();
    const auto m = app.ensemble.members();
    // Members 1-4 (alpha1 block) are E_alpha, 5-6 E_beta, 7-12 E_gamma.
    const double ea = pure_entanglement(m[0].state);
    const double eb = pure_entanglement(m[4].state);
    const double eg = pure_entanglement(m[6].state);
    const double avg = average_entanglement(app.ensemble);
    c.note("E_alpha", ea);
    c.note("E_beta", eb);
    c.note("E_gamma", eg);
    c.note("E", avg);
    c.expect(std::abs(ea - 1.8824) <= 5e-4, "E_alpha");
    c.expect(std::abs(eb - 1.1834) <= 5e-4, "E_beta");
    c.expect(std::abs(eg - 1.4605) <= 5e-4, "E_gamma");
    c.expect(std::abs(avg - 1.5506) <= 5e-4, "E");
    for (std::size_t k = 0; k < 4; ++k) c.expect(std::abs(pure_entanglement(m[k].state) - ea) < 1e-9, "alpha block");
    for (std::size_t k = 4; k < 6; ++k) c.expect(std::abs(pure_entanglement(m[k].state) - eb) < 1e-9, "beta block");
    for (std::size_t k = 6; k < 12; ++k) c.expect(std::abs(pure_entanglement(m[k].state) - eg) < 1e-9, "gamma block");
  });

  criterion(3, "superadditivity verdict", 1.0, [&](Check& c) {
    const SuperadditivityReport v = verify_superadditivity();
    c.note("ensemble_value", v.ensemble_value);
    c.note("gap", v.ensemble_value - 4.0 / 3);
    c.expect(v.ensemble_value - 4.0 / 3 >= 0.21, "gap >= 0.21");
    c.expect(v.superadditive, "superadditive");
  });

  criterion(4, "diag(1/3, 1/3, 1/3, 0) pinned at 2/3", 1.0, [&](Check& c) {
    const BoundsReport r = bounds_report(third);
    c.note("diagonal_lower", *r.diagonal_lower);
    c.note("fidelity_upper", *r.fidelity_upper);
    c.note("entropic_upper", r.entropic_upper);
    c.expect(std::abs(diagonal_lower_bound(third) - 2.0 / 3) < 1e-9, "diagonal lower");
    c.expect(std::abs(fidelity_bound(third) - 2.0 / 3) < 1e-9, "fidelity bound");
    c.expect(r.exact_value && std::abs(*r.exact_value - 2.0 / 3) < 1e-9, "exact value");
    c.expect(std::abs(r.entropic_upper - t::h2(1.0 / 3)) < 1e-6, "entropic");
  });

  criterion(5, "diag(a, 0, 0, 1 - a) pinned at H2(a)", 1.0, [&](Check& c) {
    double worst = 0.0;
    for (int k = 1; k <= 19; ++k) {
      const double a = 0.05 * k;
      const BoundsReport r = bounds_report(DensityMatrix::diagonal({2, 2}, {a, 0.0, 0.0, 1.0 - a}));
      c.expect(r.exact_value.has_value(), "exact value present");
      if (r.exact_value) worst = std::max(worst, std::abs(*r.exact_value - t::h2(a)));
    }
    c.note("max_err", worst);
    c.expect(worst < 1e-9, "within 1e-9");
  });

  criterion(6, "optimizer recovers known optima", 60.0, [&](Check& c) {
    const OptimizerConfig defaults;
    const double v1 = optimize(third, defaults).best_value;
    c.note("diag_third", v1);
    c.expect(v1 >= 2.0 / 3 - 1e-3 && v1 <= 2.0 / 3 + 1e-6, "diag_third in [2/3 - 1e-3, 2/3 + 1e-6]");
    const double v2 = optimize(DensityMatrix::diagonal({2, 2}, {0.5, 0.0, 0.0, 0.5}), defaults).best_value;
    c.note("half_00_11", v2);
    c.expect(v2 >= 1.0 - 1e-3, "half |00> + half |11> >= 1 - 1e-3");
    std::mt19937_64 rng(600);
    double worst = 1.0;
    for (int k = 0; k < 10; ++k) worst = std::min(worst, optimize(t::random_magic_mixture(rng), defaults).best_value);
    c.note("magic_min", worst);
    c.expect(worst >= 1.0 - 1e-3, "magic mixtures >= 1 - 1e-3");
  });

  criterion(7, "optimizer finds superadditivity on two copies", 300.0, [&](Check& c) {
    const DensityMatrix two = regroup(kron(third.mat(), third.mat()), {2, 2}, {2, 2});
    OptimizerConfig cfg;
    cfg.seed = 1;
    cfg.restarts = 8;
    const OptimizerResult r = optimize(two, cfg);
    c.note("rank", r.rank);
    c.note("best_value", r.best_value);
    c.expect(r.rank == 9, "rank 9");
    c.expect(r.best_value >= 1.45, "best_value >= 1.45");
    c.expect(max_abs_diff(ensemble_density(r.best_ensemble).mat(), two.mat()) < 1e-10, "ensemble reproduces state");
  });

  criterion(8, "property suites", 120.0, [&](Check& c) {
    std::mt19937_64 rng(800);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const BipartiteDims shapes[] = {{2, 2}, {2, 3}, {3, 3}};

    double hjw = 0.0;
    for (int k = 0; k < 100; ++k) {
      const BipartiteDims d = shapes[k % 3];
      const std::size_t r = 1 + k % d.total();
      const DensityMatrix rho = t::random_density(d, rng, r);
      const Isometry w = Isometry::from_unitary(t::gram_schmidt_unitary(r + k % 4, rng), r);
      hjw = std::max(hjw, max_abs_diff(ensemble_density(ensemble_from_isometry(rho, w)).mat(), rho.mat()));
    }
    c.note("hjw", hjw);
    c.expect(hjw < 1e-10, "HJW residual");

    double invol = 0.0;
    double lam = 0.0;
    double fid = 0.0;
    for (int k = 0; k < 100; ++k) {
      const DensityMatrix rho = t::random_density({2, 2}, rng, 1 + k % 4);
      invol = std::max(invol, max_abs_diff(tilde(tilde(rho)).mat(), rho.mat()));
      const PureState psi = t::random_pure({2, 2}, rng);
      lam = std::max(lam, std::abs(lambda1_via_tilde(psi.projector()) -
                                   herm_eig(partial_trace(psi.density(), Side::over_b)).values.back()));
      fid = std::max(fid, std::abs(pure_tilde_fidelity(psi.projector()) - fidelity(psi.density(), tilde(psi.density()))));
    }
    c.note("involution", invol);
    c.note("lambda1", lam);
    c.note("pure_fidelity", fid);
    c.expect(invol < 1e-12, "tilde involution");
    c.expect(lam < 1e-9, "lambda1 via tilde");
    c.expect(fid < 1e-8, "pure fidelity");

    bool h2_ok = binary_entropy(0.0) == 0.0 && binary_entropy(1.0) == 0.0 &&
                 std::abs(binary_entropy(0.5) - 1.0) < 1e-15;
    for (int k = 0; k < 1000; ++k) {
      const double x = u(rng);
      const double rhs = 2.0 * std::sqrt(x * (1.0 - x));
      h2_ok = h2_ok && binary_entropy(x) <= rhs + 1e-15;
      if (std::abs(x - 0.5) > 1e-3) h2_ok = h2_ok && binary_entropy(x) < rhs - 1e-9;
    }
    c.expect(h2_ok, "H2 <= 2 sqrt(x(1-x)), equality at 0, 1/2, 1");

    bool order_ok = true;
    for (int k = 0; k < 500; ++k) {
      const BipartiteDims d = k % 2 ? BipartiteDims{2, 2} : BipartiteDims{2, 3};
      const BoundsReport r = bounds_report(t::random_density(d, rng, 1 + k % d.total()));
      order_ok = order_ok && r.eigen_lower <= r.entropic_upper + 1e-9 && r.entropic_upper <= r.capacity + 1e-9;
      if (r.fidelity_upper) order_ok = order_ok && r.eigen_lower <= *r.fidelity_upper + 1e-9;
      if (r.diagonal_lower) order_ok = order_ok && *r.diagonal_lower <= r.entropic_upper + 1e-9;
    }
    for (int k = 0; k < 100; ++k) {
      double a[4];
      double s = 0.0;
      for (double& x : a) s += (x = u(rng));
      for (double& x : a) x /= s;
      const DensityMatrix rho = DensityMatrix::diagonal({2, 2}, std::span<const double>(a, 4));
      order_ok = order_ok && diagonal_lower_bound(rho) <= fidelity_bound(rho) + 1e-9 &&
                 diagonal_lower_bound(rho) <= entropic_bound(rho) + 1e-9;
    }
    c.expect(order_ok, "lower <= upper");

    bool additive_ok = true;
    for (int k = 0; k < 100; ++k) {
      const DensityMatrix r1 = t::random_density({2, 2}, rng);
      const DensityMatrix two = regroup(kron(r1.mat(), r1.mat()), {2, 2}, {2, 2});
      additive_ok = additive_ok && std::abs(entropic_bound(two) - 2.0 * entropic_bound(r1)) < 1e-10;
      const DensityMatrix r2 = t::random_density({2, 2}, rng, 2);
      const double w = u(rng);
      const DensityMatrix mix({2, 2}, w * r1.mat() + (1.0 - w) * r2.mat());
      additive_ok = additive_ok && entropic_bound(mix) >= w * entropic_bound(r1) + (1.0 - w) * entropic_bound(r2) - 1e-10;
    }
    c.expect(additive_ok, "entropic additivity and concavity");

    bool zero_ok = true;
    int zeros = 0;
    for (int k = 0; k < 100; ++k) {
      DensityMatrix rho = t::random_pure({2, 2}, rng).density();
      if (k % 2 == 0) {
        rho = DensityMatrix::product(t::random_pure({1, 2}, rng).projector(), t::random_density({1, 2}, rng).mat());
      } else if (k % 3 == 0) {
        rho = t::random_density({2, 2}, rng);
      }
      const bool z = is_zero_assistance(rho);
      zeros += z;
      zero_ok = zero_ok && z == (entropic_bound(rho) < 1e-9);
    }
    c.note("zero_cases", zeros);
    c.expect(zero_ok && zeros == 50, "zero assistance iff entropic bound 0");
  });

  criterion(9, "command line end to end", 60.0, [&](Check& c) {
    const json b = json::parse(shell("--format json bounds --in " + fixture("diag_third.qdm")).out)["results"];
    c.expect(std::abs(b["exact_value"].get<double>() - 2.0 / 3) < 1e-9, "bounds exact 2/3");
    c.expect(std::abs(b["fidelity_upper"].get<double>() - 2.0 / 3) < 1e-9, "bounds fidelity 2/3");
    c.expect(std::abs(b["diagonal_lower"].get<double>() - 2.0 / 3) < 1e-9, "bounds diagonal 2/3");
    c.expect(std::abs(b["entropic_upper"].get<double>() - 0.9183) < 1e-4, "bounds entropic 0.9183");

    const json a = json::parse(shell("--format json bounds --in " + fixture("diag_alpha_03.qdm")).out)["results"];
    c.expect(std::abs(a["exact_value"].get<double>() - t::h2(0.3)) < 1e-9, "bounds H2(0.3)");

    const Shell til = shell("tilde --in " + fixture("diag_third.qdm"));
    c.expect(til.code == 0, "tilde exit 0");
    c.expect(max_abs_diff(parse_qdm(til.out).mat(), Matrix::diagonal({0.0, 1.0 / 3, 1.0 / 3, 1.0 / 3})) < 1e-10,
             "tilde output");

    const Shell ver = shell("--format json verify-appendix");
    const json v = json::parse(ver.out)["results"];
    c.expect(ver.code == 0, "verify-appendix exit 0");
    c.expect(v["superadditive"] == true, "superadditive");
    c.expect(std::abs(v["ensemble_value"].get<double>() - 1.5506) <= 5e-4, "ensemble value");
    c.expect(v["consistency_residual"].get<double>() < 1e-10, "residual");

    const Shell cb = shell("--format json casebook");
    c.expect(cb.code == 0, "casebook exit 0");
    c.expect(json::parse(cb.out)["results"]["failed"] == 0, "casebook rows");

    c.expect(shell("bounds --in " + fixture("bad_trace.qdm")).code == 1, "bad_trace exit 1");
    c.expect(shell("bounds --in " + fixture("not_hermitian.qdm")).code == 1, "not_hermitian exit 1");
    c.expect(shell("bounds --in " + fixture("bad_syntax.qdm")).code == 2, "bad_syntax exit 2");
    c.expect(shell("bounds --in " + fixture("bad_dims.qdm")).code == 2, "bad_dims exit 2");
    c.expect(shell("bounds --in " + fixture("missing.qdm")).code == 2, "missing file exit 2");

    const std::string opt = "optimize --in " + fixture("diag_third.qdm") + " --direction max --seed 42";
    const Shell o1 = shell(opt);
    const Shell o2 = shell(opt);
    c.expect(o1.code == 0 && !o1.out.empty() && o1.out == o2.out, "optimize byte-identical");
  });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures;
}
