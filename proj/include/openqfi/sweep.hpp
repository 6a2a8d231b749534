#pragma once

// One-dimensional parameter sweeps over the reset rate or the dephasing
// rate, critical-point search on the optimal-direction switch, and CSV/JSON
// serialization of the results.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "openqfi/dynamics.hpp"

namespace openqfi {

enum class SweepVar { R, Gamma };

std::string_view to_string(SweepVar v) noexcept;
SweepVar parse_sweep_var(std::string_view name);

/// Coupling either held fixed or tied to the dephasing rate as g = k * gamma.
struct CouplingRule {
  enum class Kind { Fixed, Ratio };
  Kind kind = Kind::Fixed;
  double value = 0.0;

  static CouplingRule fixed(double g) { return {Kind::Fixed, g}; }
  static CouplingRule ratio(double k) { return {Kind::Ratio, k}; }
  double coupling(double gamma) const { return kind == Kind::Fixed ? value : value * gamma; }
};

struct SweepSpec {
  SweepVar vary = SweepVar::R;
  double from = 0.0;
  double to = 1.0;
  int steps = 2;
  double fixed = 0.0;  ///< gamma when sweeping r, r when sweeping gamma
  CouplingRule g_rule;
  SteadyStateMethod method = SteadyStateMethod::ClosedForm;

  /// Throws Validation unless from < to, steps >= 2 and the fixed values
  /// are finite and non-negative.
  void validate() const;
  /// Parameter value of grid point i; endpoints are hit exactly.
  double grid_value(int i) const;
  ModelParams params_at(double x) const;
};

struct SweepRow {
  double r = 0.0;
  double gamma = 0.0;
  double g = 0.0;
  double mean_f = 0.0;
  double lambda_x = 0.0;
  double lambda_yz_hi = 0.0;
  double lambda_yz_lo = 0.0;
  double concurrence = 0.0;
  double negativity = 0.0;
  double opt_nx = 0.0;
  double opt_ny = 0.0;
  double opt_nz = 0.0;
};

struct CriticalPoint {
  SweepVar vary = SweepVar::R;
  double value = 0.0;
  double bracket_width = 0.0;  ///< half-width of the final bisection bracket
};

/// Steady state plus every derived quantity at one parameter point.
SweepRow evaluate_point(const ModelParams& p, SteadyStateMethod method);

/// Rows ascend in the swept parameter. `threads` = 0 picks the hardware
/// concurrency; the result does not depend on the thread count.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 0);

inline constexpr double kCriticalBracket = 1e-4;

/// Bisects on the sign of lambda_x - lambda_yz_hi over [spec.from, spec.to].
/// spec.steps is ignored. Throws NoSignChange if the endpoints agree in sign.
CriticalPoint find_critical_point(const SweepSpec& spec);

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(std::string_view name);

inline constexpr std::string_view kCsvHeader =
    "r,gamma,g,mean_qfi,lambda_x,lambda_yz_hi,lambda_yz_lo,concurrence,negativity,opt_nx,opt_ny,opt_nz";

/// %.9g formatting, with -0 printed as 0.
std::string format_sig9(double x);

std::string to_csv(std::span<const SweepRow> rows);
std::string to_json(std::span<const SweepRow> rows);
std::string to_csv(const CriticalPoint& cp);
std::string to_json(const CriticalPoint& cp);

std::string emit(std::span<const SweepRow> rows, OutputFormat format);
std::string emit(const CriticalPoint& cp, OutputFormat format);

/// Inverse of to_csv; throws Validation on a malformed document.
std::vector<SweepRow> parse_csv(std::string_view text);

/// Writes to the file at `path`, or to stdout when no path is given.
/// Throws Io with the path on failure.
void write_output(std::string_view text, const std::optional<std::string>& path);

}  // namespace openqfi
