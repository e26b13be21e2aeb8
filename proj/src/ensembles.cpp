#include "eoa/ensembles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>

namespace eoa {

namespace {

constexpr double kRankCutoff = 1e-10;
constexpr double kIsometryTol = 1e-10;

constexpr std::size_t kThetaGrid = 24;  // over [0, pi)
constexpr std::size_t kPhiGrid = 12;    // over [0, 2 pi)
constexpr int kGoldenIterations = 30;
constexpr double kAcceptMargin = 1e-15;

using Vec = std::vector<Complex>;

// Nonzero eigenpairs of rho in descending eigenvalue order: scaled vectors
// sqrt(lambda_i) e_i.
std::vector<Vec> scaled_eigenvectors(const DensityMatrix& rho) {
  const HermEig eig = herm_eig(rho.mat());
  std::vector<Vec> out;
  for (std::size_t k = eig.values.size(); k-- > 0;) {
    if (eig.values[k] <= kRankCutoff) continue;
    Vec v = eig.vectors.column(k);
    const double s = std::sqrt(eig.values[k]);
    for (auto& z : v) z *= s;
    out.push_back(std::move(v));
  }
  return out;
}

double norm2(const Vec& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

// Turns sub-normalized vectors sqrt(p) psi into an Ensemble, dropping
// members below kDropProbability and renormalizing what remains.
Ensemble to_ensemble(BipartiteDims dims, const std::vector<Vec>& vecs) {
  std::vector<EnsembleMember> members;
  std::vector<double> weights;
  for (const auto& v : vecs) {
    const double p = norm2(v);
    if (p < kDropProbability) continue;
    members.push_back({p, PureState::normalized(dims, v)});
    weights.push_back(p);
  }
  if (members.empty()) throw ValidationError("ensemble: every member has negligible weight");
  // Sorted so that reordering the members cannot change a single bit.
  std::sort(weights.begin(), weights.end());
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (auto& m : members) m.p /= total;
  return Ensemble(dims, std::move(members));
}

std::vector<Vec> mix(const Matrix& w, const std::vector<Vec>& basis, std::size_t dim) {
  std::vector<Vec> out(w.rows(), Vec(dim));
  for (std::size_t j = 0; j < w.rows(); ++j)
    for (std::size_t i = 0; i < w.cols(); ++i) {
      const Complex wji = w(j, i);
      if (wji == Complex{}) continue;
      for (std::size_t k = 0; k < dim; ++k) out[j][k] += wji * basis[i][k];
    }
  return out;
}

// Coordinate ascent over Givens rotations of the rows of the mixing unitary.
// The state is the list of sub-normalized vectors; the score is
// sign * sum_j |v_j|^2 E(v_j / |v_j|).
class RestartRun {
 public:
  RestartRun(BipartiteDims dims, std::vector<Vec> vecs, double sign)
      : dims_(dims), sign_(sign), vecs_(std::move(vecs)), vals_(vecs_.size()),
        wp_(dims.total()), wq_(dims.total()) {
    for (std::size_t j = 0; j < vecs_.size(); ++j) vals_[j] = weighted_entanglement(vecs_[j], dims_);
  }

  double total() const {
    double s = 0.0;
    for (double v : vals_) s += v;
    return s;
  }

  // One pass over all row pairs; returns the change in the (signed) score.
  double sweep() {
    const double before = sign_ * total();
    for (std::size_t p = 0; p + 1 < vecs_.size(); ++p)
      for (std::size_t q = p + 1; q < vecs_.size(); ++q) optimize_pair(p, q);
    return sign_ * total() - before;
  }

  const std::vector<Vec>& vectors() const { return vecs_; }

 private:
  double rotated_score(std::size_t p, std::size_t q, double theta, double phi) {
    const double c = std::cos(theta);
    const Complex e = std::polar(std::sin(theta), phi);
    const Complex ec = -std::conj(e);
    const Vec& vp = vecs_[p];
    const Vec& vq = vecs_[q];
    for (std::size_t k = 0; k < vp.size(); ++k) {
      wp_[k] = c * vp[k] + e * vq[k];
      wq_[k] = ec * vp[k] + c * vq[k];
    }
    return sign_ * (weighted_entanglement(wp_, dims_) + weighted_entanglement(wq_, dims_));
  }

  void optimize_pair(std::size_t p, std::size_t q) {
    // Rotating against a zero vector only rescales the other one.
    if (norm2(vecs_[p]) == 0.0 || norm2(vecs_[q]) == 0.0) return;
    const double base = sign_ * (vals_[p] + vals_[q]);

    double best = -std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    double best_phi = 0.0;
    auto consider = [&](double theta, double phi) {
      const double s = rotated_score(p, q, theta, phi);
      if (s > best) {
        best = s;
        best_theta = theta;
        best_phi = phi;
      }
      return s;
    };

    const double dtheta = std::numbers::pi / kThetaGrid;
    const double dphi = 2.0 * std::numbers::pi / kPhiGrid;
    for (std::size_t k = 0; k < kThetaGrid; ++k)
      for (std::size_t l = 0; l < kPhiGrid; ++l) consider(dtheta * static_cast<double>(k), dphi * static_cast<double>(l));

    // Golden-section refinements: theta, then phi, then theta again, each over
    // one grid cell either side of the incumbent.
    golden(best_theta - dtheta, best_theta + dtheta, [&](double t) { return consider(t, best_phi); });
    golden(best_phi - dphi, best_phi + dphi, [&](double f) { return consider(best_theta, f); });
    golden(best_theta - dtheta / 2.0, best_theta + dtheta / 2.0, [&](double t) { return consider(t, best_phi); });

    if (best <= base + kAcceptMargin) return;
    const double c = std::cos(best_theta);
    const Complex e = std::polar(std::sin(best_theta), best_phi);
    const Complex ec = -std::conj(e);
    Vec& vp = vecs_[p];
    Vec& vq = vecs_[q];
    for (std::size_t k = 0; k < vp.size(); ++k) {
      const Complex a = vp[k];
      const Complex b = vq[k];
      vp[k] = c * a + e * b;
      vq[k] = ec * a + c * b;
    }
    vals_[p] = weighted_entanglement(vp, dims_);
    vals_[q] = weighted_entanglement(vq, dims_);
  }

  template <typename F>
  static void golden(double lo, double hi, F&& f) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < kGoldenIterations; ++it) {
      if (f1 >= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - kInvPhi * (hi - lo);
        f1 = f(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + kInvPhi * (hi - lo);
        f2 = f(x2);
      }
    }
  }

  BipartiteDims dims_;
  double sign_;
  std::vector<Vec> vecs_;
  std::vector<double> vals_;
  Vec wp_;
  Vec wq_;
};

struct Problem {
  std::vector<Vec> basis;  // sqrt(lambda_i) e_i
  std::size_t m;
};

Problem prepare(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  Problem pr{scaled_eigenvectors(rho), 0};
  const std::size_t r = pr.basis.size();
  if (cfg.ensemble_size) {
    if (*cfg.ensemble_size < r)
      throw ValidationError("optimize: ensemble size " + std::to_string(*cfg.ensemble_size) + " is below rank " +
                            std::to_string(r));
    pr.m = *cfg.ensemble_size;
  } else {
    pr.m = auto_ensemble_size(r);
  }
  if (cfg.restarts == 0) throw ValidationError("optimize: restarts must be positive");
  if (cfg.max_sweeps == 0) throw ValidationError("optimize: max_sweeps must be positive");
  if (!(cfg.tol >= 0.0)) throw ValidationError("optimize: tol must be non-negative");
  return pr;
}

RestartRun start(const DensityMatrix& rho, const Problem& pr, const OptimizerConfig& cfg, std::size_t restart) {
  const std::size_t r = pr.basis.size();
  const Matrix u = restart == 0 ? Matrix::identity(pr.m)
                                : random_unitary(pr.m, static_cast<std::uint64_t>(cfg.seed) + restart);
  const Isometry w = Isometry::from_unitary(u, r);
  const double sign = cfg.direction == Direction::maximize ? 1.0 : -1.0;
  return RestartRun(rho.dims(), mix(w.matrix(), pr.basis, rho.dims().total()), sign);
}

}  // namespace

// ---------------------------------------------------------------------------

Isometry::Isometry(Matrix w) : w_(std::move(w)) {
  if (w_.empty()) throw ValidationError("Isometry: empty matrix");
  if (w_.rows() < w_.cols()) throw ValidationError("Isometry: needs at least as many rows as columns");
  const Matrix gram = w_.adjoint() * w_;
  if (max_abs_diff(gram, Matrix::identity(w_.cols())) > kIsometryTol)
    throw ValidationError("Isometry: columns are not orthonormal");
}

Isometry Isometry::from_unitary(const Matrix& u, std::size_t r) {
  if (r == 0 || r > u.cols()) throw ValidationError("Isometry::from_unitary: bad column count");
  Matrix w(u.rows(), r);
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < r; ++j) w(i, j) = u(i, j);
  return Isometry(std::move(w));
}

Ensemble ensemble_from_isometry(const DensityMatrix& rho, const Isometry& w) {
  const auto basis = scaled_eigenvectors(rho);
  if (w.rank() != basis.size())
    throw ValidationError("ensemble_from_isometry: isometry has " + std::to_string(w.rank()) +
                          " columns but rho has rank " + std::to_string(basis.size()));
  return to_ensemble(rho.dims(), mix(w.matrix(), basis, rho.dims().total()));
}

Ensemble pairwise_reshuffle(const Ensemble& e, std::size_t i, std::size_t j, double theta, double phi) {
  if (i >= e.size() || j >= e.size()) throw ValidationError("pairwise_reshuffle: index out of range");
  if (i == j) throw ValidationError("pairwise_reshuffle: indices must differ");
  std::vector<Vec> vecs;
  vecs.reserve(e.size());
  for (const auto& m : e.members()) {
    Vec v(m.state.vec().begin(), m.state.vec().end());
    const double s = std::sqrt(m.p);
    for (auto& z : v) z *= s;
    vecs.push_back(std::move(v));
  }
  const double c = std::cos(theta);
  const Complex s = std::polar(std::sin(theta), phi);
  for (std::size_t k = 0; k < vecs[i].size(); ++k) {
    const Complex a = vecs[i][k];
    const Complex b = vecs[j][k];
    vecs[i][k] = c * a + s * b;
    vecs[j][k] = -std::conj(s) * a + c * b;
  }
  return to_ensemble(e.dims(), vecs);
}

std::size_t auto_ensemble_size(std::size_t rank) {
  return std::min<std::size_t>(std::max(2 * rank, rank + 4), 64);
}

std::vector<double> optimize_trace(const DensityMatrix& rho, const OptimizerConfig& cfg, std::size_t restart) {
  const Problem pr = prepare(rho, cfg);
  RestartRun run = start(rho, pr, cfg, restart);
  std::vector<double> trace{run.total()};
  for (std::size_t s = 0; s < cfg.max_sweeps; ++s) {
    const double gain = run.sweep();
    trace.push_back(run.total());
    if (gain < cfg.tol) break;
  }
  return trace;
}

OptimizerResult optimize(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  const Problem pr = prepare(rho, cfg);

  struct Slot {
    RestartOutcome outcome;
    std::vector<Vec> vecs;
  };
  std::vector<Slot> slots(cfg.restarts);

  auto run_restart = [&](std::size_t k) {
    RestartRun run = start(rho, pr, cfg, k);
    std::size_t sweeps = 0;
    bool converged = false;
    while (sweeps < cfg.max_sweeps) {
      const double gain = run.sweep();
      ++sweeps;
      if (gain < cfg.tol) {
        converged = true;
        break;
      }
    }
    slots[k] = {{cfg.seed + static_cast<std::int64_t>(k), run.total(), sweeps, converged}, run.vectors()};
  };

  std::size_t workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, cfg.restarts);
  if (workers <= 1) {
    for (std::size_t k = 0; k < cfg.restarts; ++k) run_restart(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < cfg.restarts; k = next++) run_restart(k);
      });
  }

  // Deterministic reduction: best value wins, ties go to the lower index.
  const bool maximize = cfg.direction == Direction::maximize;
  std::size_t best = 0;
  for (std::size_t k = 1; k < slots.size(); ++k) {
    const double v = slots[k].outcome.value;
    const double b = slots[best].outcome.value;
    if (maximize ? v > b : v < b) best = k;
  }

  Ensemble ens = to_ensemble(rho.dims(), slots[best].vecs);
  std::vector<RestartOutcome> outcomes;
  outcomes.reserve(slots.size());
  for (const auto& s : slots) outcomes.push_back(s.outcome);
  const double value = average_entanglement(ens);
  return OptimizerResult{value, std::move(ens), std::move(outcomes), slots[best].outcome.converged, pr.m,
                         pr.basis.size()};
}

}  // namespace eoa
