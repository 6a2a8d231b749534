// openqfi: steady-state QFI, concurrence and negativity of the reset/dephasing
// two-qubit model, at single points, along 1-D sweeps, and at the switch of
// the optimal rotation axis.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "openqfi/error.hpp"
#include "openqfi/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

int exit_code_for(openqfi::ErrorCode code) {
  using openqfi::ErrorCode;
  switch (code) {
    case ErrorCode::Validation:
    case ErrorCode::InvalidParams:
      return kExitUsage;
    case ErrorCode::Io:
      return kExitIo;
    default:
      return kExitSolver;
  }
}

struct Options {
  std::string method = "closed-form";
  std::string format = "csv";
  std::optional<std::string> out;

  // eval
  double r = 0.0;
  double gamma = 0.0;
  double g = 0.0;

  // sweep / critical
  std::string vary;
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
  std::optional<double> fixed_r;
  std::optional<double> fixed_gamma;
  std::optional<double> fixed_g;
  std::optional<double> g_ratio;
  unsigned threads = 0;
};

openqfi::SweepSpec build_spec(const Options& o, double from, double to, int steps) {
  using openqfi::Error;
  using openqfi::ErrorCode;
  openqfi::SweepSpec spec;
  spec.vary = openqfi::parse_sweep_var(o.vary);
  spec.from = from;
  spec.to = to;
  spec.steps = steps;
  spec.method = openqfi::parse_method(o.method);

  if (spec.vary == openqfi::SweepVar::R) {
    if (!o.fixed_gamma || o.fixed_r) throw Error(ErrorCode::Validation, "sweeping r needs --gamma and no --r");
    spec.fixed = *o.fixed_gamma;
  } else {
    if (!o.fixed_r || o.fixed_gamma) throw Error(ErrorCode::Validation, "sweeping gamma needs --r and no --gamma");
    spec.fixed = *o.fixed_r;
  }
  if (o.fixed_g.has_value() == o.g_ratio.has_value()) {
    throw Error(ErrorCode::Validation, "give exactly one of --g or --g-ratio");
  }
  spec.g_rule = o.fixed_g ? openqfi::CouplingRule::fixed(*o.fixed_g) : openqfi::CouplingRule::ratio(*o.g_ratio);
  return spec;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--method", o.method, "Steady-state route")
      ->check(CLI::IsMember({"closed-form", "nullspace", "integrate"}));
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state quantum Fisher information of a two-qubit reset/dephasing model", "openqfi"};
  app.require_subcommand(1);
  Options o;

  auto* eval = app.add_subcommand("eval", "Evaluate one parameter point");
  eval->add_option("--r", o.r, "Reset rate")->required();
  eval->add_option("--gamma", o.gamma, "Dephasing rate")->required();
  eval->add_option("--g", o.g, "ZZ coupling")->required();
  add_common(eval, o);

  auto* sweep = app.add_subcommand("sweep", "Sweep r or gamma over a uniform grid");
  sweep->add_option("--vary", o.vary, "Swept parameter")->required()->check(CLI::IsMember({"r", "gamma"}));
  sweep->add_option("--from", o.from, "First grid value")->required();
  sweep->add_option("--to", o.to, "Last grid value")->required();
  sweep->add_option("--steps", o.steps, "Number of grid points, endpoints included")->required();
  auto* sweep_r = sweep->add_option("--r", o.fixed_r, "Fixed reset rate (when sweeping gamma)");
  auto* sweep_gamma = sweep->add_option("--gamma", o.fixed_gamma, "Fixed dephasing rate (when sweeping r)");
  sweep_r->excludes(sweep_gamma);
  auto* sweep_g = sweep->add_option("--g", o.fixed_g, "Fixed coupling");
  auto* sweep_ratio = sweep->add_option("--g-ratio", o.g_ratio, "Coupling as a multiple of gamma");
  sweep_g->excludes(sweep_ratio);
  sweep->add_option("--out", o.out, "Output file (default: stdout)");
  sweep->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  add_common(sweep, o);

  auto* critical = app.add_subcommand("critical", "Locate the switch of the optimal rotation axis");
  critical->add_option("--vary", o.vary, "Searched parameter")->required()->check(CLI::IsMember({"r", "gamma"}));
  critical->add_option("--lo", o.from, "Lower end of the search interval")->required();
  critical->add_option("--hi", o.to, "Upper end of the search interval")->required();
  auto* crit_r = critical->add_option("--r", o.fixed_r, "Fixed reset rate (when searching gamma)");
  auto* crit_gamma = critical->add_option("--gamma", o.fixed_gamma, "Fixed dephasing rate (when searching r)");
  crit_r->excludes(crit_gamma);
  auto* crit_g = critical->add_option("--g", o.fixed_g, "Fixed coupling");
  auto* crit_ratio = critical->add_option("--g-ratio", o.g_ratio, "Coupling as a multiple of gamma");
  crit_g->excludes(crit_ratio);
  add_common(critical, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const auto format = openqfi::parse_format(o.format);
    if (eval->parsed()) {
      openqfi::ModelParams p;
      p.r = o.r;
      p.gamma = o.gamma;
      p.g = o.g;
      p.validate();
      const openqfi::SweepRow row = openqfi::evaluate_point(p, openqfi::parse_method(o.method));
      openqfi::write_output(openqfi::emit(std::span(&row, 1), format), std::nullopt);
    } else if (sweep->parsed()) {
      const auto spec = build_spec(o, o.from, o.to, o.steps);
      const auto rows = openqfi::run_sweep(spec, o.threads);
      openqfi::write_output(openqfi::emit(rows, format), o.out);
    } else if (critical->parsed()) {
      const auto spec = build_spec(o, o.from, o.to, 2);
      openqfi::write_output(openqfi::emit(openqfi::find_critical_point(spec), format), std::nullopt);
    }
  } catch (const openqfi::Error& e) {
    std::cerr << "openqfi: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "openqfi: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}
