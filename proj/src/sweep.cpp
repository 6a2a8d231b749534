#include "openqfi/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "openqfi/entanglement.hpp"
#include "openqfi/error.hpp"
#include "openqfi/metrology.hpp"

namespace openqfi {

std::string_view to_string(SweepVar v) noexcept { return v == SweepVar::R ? "r" : "gamma"; }

SweepVar parse_sweep_var(std::string_view name) {
  if (name == "r") return SweepVar::R;
  if (name == "gamma") return SweepVar::Gamma;
  throw Error(ErrorCode::Validation, "sweep variable must be 'r' or 'gamma', got '" + std::string(name) + "'");
}

void SweepSpec::validate() const {
  if (!std::isfinite(from) || !std::isfinite(to) || !(from < to)) {
    throw Error(ErrorCode::Validation, "sweep range needs from < to (got " + format_sig9(from) + ", " +
                                           format_sig9(to) + ")");
  }
  if (steps < 2) throw Error(ErrorCode::Validation, "sweep needs at least 2 steps");
  if (!std::isfinite(fixed) || fixed < 0.0) throw Error(ErrorCode::Validation, "fixed rate must be non-negative");
  if (!std::isfinite(g_rule.value) || g_rule.value < 0.0) {
    throw Error(ErrorCode::Validation, "coupling value must be non-negative");
  }
  if (from < 0.0) throw Error(ErrorCode::Validation, "swept rate must stay non-negative");
}

double SweepSpec::grid_value(int i) const {
  if (i == steps - 1) return to;
  return from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

ModelParams SweepSpec::params_at(double x) const {
  ModelParams p;
  p.r = vary == SweepVar::R ? x : fixed;
  p.gamma = vary == SweepVar::Gamma ? x : fixed;
  p.g = g_rule.coupling(p.gamma);
  return p;
}

SweepRow evaluate_point(const ModelParams& p, SteadyStateMethod method) {
  static const CollectiveSpin spin = collective_spin_ops(2);
  const DensityMatrix rho = steady_state(p, method);
  const QfiResult qfi = mean_qfi_max(rho, spin);
  const Mat3& c = qfi.c;

  SweepRow row;
  row.r = p.r;
  row.gamma = p.gamma;
  row.g = p.g;
  row.mean_f = qfi.mean_f;
  row.lambda_x = c[0][0];
  const double mid = 0.5 * (c[1][1] + c[2][2]);
  const double half_gap = std::hypot(0.5 * (c[1][1] - c[2][2]), c[1][2]);
  row.lambda_yz_hi = mid + half_gap;
  row.lambda_yz_lo = mid - half_gap;
  row.concurrence = concurrence(rho);
  row.negativity = negativity(rho);
  row.opt_nx = qfi.opt_dir.nx();
  row.opt_ny = qfi.opt_dir.ny();
  row.opt_nz = qfi.opt_dir.nz();
  return row;
}

namespace {

Error annotate(const Error& e, SweepVar vary, double x) {
  return Error(e.code(), "at " + std::string(to_string(vary)) + "=" + format_sig9(x) + ": " + e.detail());
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  const auto n = static_cast<std::size_t>(spec.steps);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

  std::vector<SweepRow> rows(n);
  std::vector<std::exception_ptr> failures(n);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const double x = spec.grid_value(static_cast<int>(i));
      try {
        rows[i] = evaluate_point(spec.params_at(x), spec.method);
      } catch (const Error& e) {
        failures[i] = std::make_exception_ptr(annotate(e, spec.vary, x));
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  // Report the lowest failing grid point so errors are schedule-independent.
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  return rows;
}

CriticalPoint find_critical_point(const SweepSpec& spec) {
  SweepSpec checked = spec;
  checked.steps = std::max(checked.steps, 2);
  checked.validate();

  auto branch_gap = [&](double x) {
    try {
      const SweepRow row = evaluate_point(spec.params_at(x), spec.method);
      return row.lambda_x - row.lambda_yz_hi;
    } catch (const Error& e) {
      throw annotate(e, spec.vary, x);
    }
  };

  double lo = spec.from;
  double hi = spec.to;
  const double gap_lo = branch_gap(lo);
  const double gap_hi = branch_gap(hi);
  if (!(gap_lo * gap_hi < 0.0)) {
    throw Error(ErrorCode::NoSignChange, "lambda_x - lambda_yz_hi does not change sign on [" + format_sig9(lo) +
                                             ", " + format_sig9(hi) + "] (" + format_sig9(gap_lo) + ", " +
                                             format_sig9(gap_hi) + ")");
  }
  const bool lo_positive = gap_lo > 0.0;
  while (hi - lo > kCriticalBracket) {
    const double mid = 0.5 * (lo + hi);
    const double gap = branch_gap(mid);
    if (gap == 0.0) {
      lo = hi = mid;
      break;
    }
    ((gap > 0.0) == lo_positive ? lo : hi) = mid;
  }
  return {spec.vary, 0.5 * (lo + hi), 0.5 * (hi - lo)};
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw Error(ErrorCode::Validation, "format must be 'csv' or 'json', got '" + std::string(name) + "'");
}

std::string format_sig9(double x) {
  if (x == 0.0) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

namespace {

double round_sig9(double x) { return std::strtod(format_sig9(x).c_str(), nullptr); }

std::array<double, 12> fields(const SweepRow& row) {
  return {row.r,           row.gamma,      row.g,        row.mean_f,   row.lambda_x, row.lambda_yz_hi,
          row.lambda_yz_lo, row.concurrence, row.negativity, row.opt_nx, row.opt_ny,   row.opt_nz};
}

std::vector<std::string> field_names() {
  std::vector<std::string> names;
  std::stringstream ss{std::string(kCsvHeader)};
  for (std::string name; std::getline(ss, name, ',');) names.push_back(name);
  return names;
}

}  // namespace

std::string to_csv(std::span<const SweepRow> rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& row : rows) {
    const auto values = fields(row);
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (k) out += ',';
      out += format_sig9(values[k]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(std::span<const SweepRow> rows) {
  static const std::vector<std::string> names = field_names();
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj;
    const auto values = fields(row);
    for (std::size_t k = 0; k < values.size(); ++k) obj[names[k]] = round_sig9(values[k]);
    doc.push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

std::string to_csv(const CriticalPoint& cp) {
  return "vary,value,bracket_width\n" + std::string(to_string(cp.vary)) + "," + format_sig9(cp.value) + "," +
         format_sig9(cp.bracket_width) + "\n";
}

std::string to_json(const CriticalPoint& cp) {
  nlohmann::ordered_json obj;
  obj["vary"] = std::string(to_string(cp.vary));
  obj["value"] = round_sig9(cp.value);
  obj["bracket_width"] = round_sig9(cp.bracket_width);
  return obj.dump(2) + "\n";
}

std::string emit(std::span<const SweepRow> rows, OutputFormat format) {
  return format == OutputFormat::Csv ? to_csv(rows) : to_json(rows);
}

std::string emit(const CriticalPoint& cp, OutputFormat format) {
  return format == OutputFormat::Csv ? to_csv(cp) : to_json(cp);
}

std::vector<SweepRow> parse_csv(std::string_view text) {
  std::stringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw Error(ErrorCode::Validation, "missing or unexpected CSV header");

  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<double, 12> values{};
    std::stringstream cells(line);
    std::string cell;
    std::size_t k = 0;
    for (; std::getline(cells, cell, ','); ++k) {
      if (k >= values.size()) throw Error(ErrorCode::Validation, "too many CSV fields: " + line);
      char* end = nullptr;
      values[k] = std::strtod(cell.c_str(), &end);
      if (cell.empty() || *end != '\0') throw Error(ErrorCode::Validation, "bad CSV number '" + cell + "'");
    }
    if (k != values.size()) throw Error(ErrorCode::Validation, "too few CSV fields: " + line);
    rows.push_back({values[0], values[1], values[2], values[3], values[4], values[5], values[6], values[7], values[8],
                    values[9], values[10], values[11]});
  }
  return rows;
}

void write_output(std::string_view text, const std::optional<std::string>& path) {
  if (!path) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw Error(ErrorCode::Io, "failed writing to standard output");
    return;
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::Io, "cannot open '" + *path + "' for writing");
  file << text;
  file.close();
  if (!file) throw Error(ErrorCode::Io, "failed writing '" + *path + "'");
}

}  // namespace openqfi
