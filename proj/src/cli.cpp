#include "eoa/cli.hpp"

#include <charconv>
#include <optional>

#include "CLI11.hpp"
#include "eoa/bounds.hpp"
#include "eoa/casebook.hpp"
#include "eoa/ensembles.hpp"
#include "eoa/magic.hpp"
#include "eoa/qio.hpp"
#include "eoa/report.hpp"

namespace eoa::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
  std::string format = "text";
  std::string input;
  std::string output;
  std::string direction = "max";
  std::string ensemble_size = "auto";
  std::size_t restarts = 16;
  std::int64_t seed = 1;
  std::size_t max_sweeps = 200;
  double tol = 1e-9;
  std::size_t threads = 0;
  std::string out_ensemble;
};

struct Outcome {
  Report report;
  int code = kOk;
  std::optional<std::string> raw_text;  // replaces the text rendering (tilde)
};

DensityMatrix load_state(const std::string& path) { return parse_qdm(read_text_file(path)); }

ordered_json matrix_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({round12(m(i, j).real()), round12(m(i, j).imag())});
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json dims_json(BipartiteDims d) { return ordered_json::array({d.a, d.b}); }

Outcome cmd_bounds(const Options& o) {
  const DensityMatrix rho = load_state(o.input);
  const BoundsReport b = bounds_report(rho);
  Outcome out;
  out.report.add("dims", dims_json(rho.dims()))
      .add("entropic_upper", b.entropic_upper)
      .add("fidelity_upper", b.fidelity_upper)
      .add("diagonal_lower", b.diagonal_lower)
      .add("eigen_lower", b.eigen_lower)
      .add("capacity", b.capacity)
      .add("zero_assistance", b.zero_assistance)
      .add("eof_gap_rhs", b.eof_gap_rhs)
      .add("exact_value", b.exact_value);
  return out;
}

OptimizerConfig optimizer_config(const Options& o) {
  OptimizerConfig cfg;
  if (o.direction == "max" || o.direction == "maximize") {
    cfg.direction = Direction::maximize;
  } else if (o.direction == "min" || o.direction == "minimize") {
    cfg.direction = Direction::minimize;
  } else {
    throw ValidationError("--direction must be max or min");
  }
  if (o.ensemble_size != "auto") {
    std::size_t m = 0;
    const auto* end = o.ensemble_size.data() + o.ensemble_size.size();
    const auto [ptr, ec] = std::from_chars(o.ensemble_size.data(), end, m);
    if (ec != std::errc{} || ptr != end || m == 0)
      throw ValidationError("--ensemble-size must be 'auto' or a positive integer");
    cfg.ensemble_size = m;
  }
  cfg.restarts = o.restarts;
  cfg.seed = o.seed;
  cfg.max_sweeps = o.max_sweeps;
  cfg.tol = o.tol;
  cfg.threads = o.threads;
  return cfg;
}

Outcome cmd_optimize(const Options& o) {
  const DensityMatrix rho = load_state(o.input);
  const OptimizerConfig cfg = optimizer_config(o);
  const OptimizerResult res = optimize(rho, cfg);

  ordered_json restarts = ordered_json::array();
  for (const auto& r : res.per_restart)
    restarts.push_back({{"seed", r.seed}, {"value", round12(r.value)}, {"sweeps", r.sweeps}, {"converged", r.converged}});

  Outcome out;
  out.report.add("dims", dims_json(rho.dims()))
      .add("direction", std::string(cfg.direction == Direction::maximize ? "max" : "min"))
      .add("rank", static_cast<long long>(res.rank))
      .add("ensemble_size", static_cast<long long>(res.ensemble_size))
      .add("restarts", static_cast<long long>(cfg.restarts))
      .add("seed", static_cast<long long>(cfg.seed))
      .add("best_value", res.best_value)
      .add("best_members", static_cast<long long>(res.best_ensemble.size()))
      .add("converged", res.converged)
      .add("eigen_lower", eigen_lower_bound(rho))
      .add("entropic_upper", entropic_bound(rho))
      .add("per_restart", std::move(restarts));
  if (!o.out_ensemble.empty()) {
    write_text_file(o.out_ensemble, write_qens(res.best_ensemble));
    out.report.add("ensemble_file", o.out_ensemble);
  }
  return out;
}

Outcome cmd_tilde(const Options& o) {
  const DensityMatrix rho = load_state(o.input);
  const DensityMatrix t = tilde(rho);
  const std::string qdm = write_qdm(t);
  Outcome out;
  out.report.add("dims", dims_json(t.dims())).add("matrix", matrix_json(t.mat()));
  if (!o.output.empty()) {
    write_text_file(o.output, qdm);
    out.report.add("output", o.output);
    out.raw_text = "wrote " + o.output + "\n";
  } else {
    out.raw_text = qdm;
  }
  return out;
}

Outcome cmd_verify_appendix() {
  const SuperadditivityReport v = verify_superadditivity();
  const AppendixEnsemble app = appendix_ensemble();
  ordered_json member_e = ordered_json::array();
  for (const auto& m : app.ensemble.members()) member_e.push_back(round12(pure_entanglement(m.state)));

  Outcome out;
  out.report.add("consistency_residual", v.consistency_residual)
      .add("single_copy_value", v.single_copy_value)
      .add("additive_value", v.additive_value)
      .add("ensemble_value", v.ensemble_value)
      .add("entropic_upper", v.entropic_upper)
      .add("gap", v.gap)
      .add("superadditive", v.superadditive)
      .add("a", app.constants.a)
      .add("b", app.constants.b)
      .add("c", app.constants.c)
      .add("d", app.constants.d)
      .add("alpha1", app.constants.alpha1)
      .add("alpha2", app.constants.alpha2)
      .add("member_entanglements", std::move(member_e));
  out.code = v.superadditive ? kOk : kVerification;
  return out;
}

Outcome cmd_casebook() {
  const auto rows = casebook();
  ordered_json arr = ordered_json::array();
  long long failed = 0;
  for (const auto& r : rows) {
    arr.push_back({{"case_id", r.case_id},
                   {"expected", round12(r.expected)},
                   {"computed", round12(r.computed)},
                   {"tolerance", round12(r.tolerance)},
                   {"pass", r.pass}});
    if (!r.pass) ++failed;
  }
  Outcome out;
  out.report.add("rows", std::move(arr))
      .add("passed", static_cast<long long>(rows.size()) - failed)
      .add("failed", failed);
  out.code = failed == 0 ? kOk : kVerification;
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement of assistance: bounds, ensemble optimization and reference checks", "eoa"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.set_version_flag("--version", kVersion);

  auto* bounds = app.add_subcommand("bounds", "Closed-form upper/lower bounds for a QDM state");
  bounds->add_option("--in", o.input, "Input QDM file")->required();

  auto* opt = app.add_subcommand("optimize", "Optimize the average entanglement over ensembles");
  opt->add_option("--in", o.input, "Input QDM file")->required();
  opt->add_option("--direction", o.direction, "max (assistance) or min (formation estimate)")
      ->check(CLI::IsMember({"max", "min", "maximize", "minimize"}));
  opt->add_option("--ensemble-size", o.ensemble_size, "Ensemble size or 'auto'");
  opt->add_option("--restarts", o.restarts, "Number of restarts")->check(CLI::PositiveNumber);
  opt->add_option("--seed", o.seed, "Base seed; restart k uses seed + k");
  opt->add_option("--max-sweeps", o.max_sweeps, "Sweep limit per restart")->check(CLI::PositiveNumber);
  opt->add_option("--tol", o.tol, "Stop when a sweep improves by less than this");
  opt->add_option("--threads", o.threads, "Worker threads (0 = hardware)");
  opt->add_option("--out-ensemble", o.out_ensemble, "Write the best ensemble as QENS");

  auto* til = app.add_subcommand("tilde", "Magic-basis complex conjugate of a two-qubit state");
  til->add_option("--in", o.input, "Input QDM file")->required();
  til->add_option("--out", o.output, "Write the result here instead of stdout");

  auto* ver = app.add_subcommand("verify-appendix", "Check the twelve-member two-copy ensemble");
  auto* cb = app.add_subcommand("casebook", "Recompute every reference value");

  std::vector<std::string> argv_store{"eoa"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kIoOrParse;
  }

  std::string command;
  std::optional<std::string> input;
  try {
    Outcome res;
    if (bounds->parsed()) {
      command = "bounds";
      input = o.input;
      res = cmd_bounds(o);
    } else if (opt->parsed()) {
      command = "optimize";
      input = o.input;
      res = cmd_optimize(o);
    } else if (til->parsed()) {
      command = "tilde";
      input = o.input;
      res = cmd_tilde(o);
    } else if (ver->parsed()) {
      command = "verify-appendix";
      res = cmd_verify_appendix();
    } else if (cb->parsed()) {
      command = "casebook";
      res = cmd_casebook();
    }

    if (o.format == "json") {
      out << envelope(command, input, res.report).dump(2) << '\n';
    } else if (res.raw_text) {
      out << *res.raw_text;
    } else {
      out << res.report.to_text();
    }
    return res.code;
  } catch (const DimensionMismatchError& e) {
    err << "eoa: dimension mismatch: " << e.what() << '\n';
    return kIoOrParse;
  } catch (const ParseError& e) {
    err << "eoa: syntax error: " << e.what() << '\n';
    return kIoOrParse;
  } catch (const IoError& e) {
    err << "eoa: I/O error: " << e.what() << '\n';
    return kIoOrParse;
  } catch (const VerificationError& e) {
    err << "eoa: verification failed: " << e.what() << '\n';
    return kVerification;
  } catch (const ValidationError& e) {
    err << "eoa: validation error: " << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace eoa::cli
