#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mvno/benchmark.hpp"
#include "mvno/spne.hpp"

namespace mvno {

/// One sweep request: solve the game at every s in s_values (strictly
/// increasing, each >= gamma), plus the reference-market scenarios used
/// by run_benchmark_sweep. Scenario transports equal to zero are
/// evaluated as one-sided limits at epsilon = 1e-9 and flagged.
struct SweepSpec {
  std::vector<double> s_values;
  double gamma = 0.1;
  double c = 1.0;
  std::vector<std::pair<double, double>> benchmark_scenarios;  // (t_L, t_F)
  Stage1Options options;
};

void validate_sweep(const SweepSpec& spec);

/// Default grid for figures: s from 0.1 to 1.0 in steps of 0.01.
std::vector<double> default_s_grid();

struct SweepRow {
  double s = 0.0;
  double gamma = 0.0;
  double c = 0.0;
  char regime = 'B';
  double I_L = 0.0;
  double I_F = 0.0;
  double sqrt_2_over_9s = 0.0;
  double p_L = 0.0;
  double p_F = 0.0;
  double n_L = 0.0;
  double n_F = 0.0;
  double pi_L = 0.0;
  double pi_F = 0.0;
  double t_L = 0.0;
  double t_F = 0.0;
  double foc_residual = 0.0;
  std::vector<std::string> warnings;
};

struct BenchmarkSweepRow {
  double s = 0.0;
  double gamma = 0.0;
  double c = 0.0;
  int scenario = 0;  // 1-based index into benchmark_scenarios
  double t_L = 0.0;
  double t_F = 0.0;
  double p_L_B = 0.0;
  double p_F_B = 0.0;
  double n_L_B = 0.0;
  double n_F_B = 0.0;
  double pi_L_B = 0.0;
  double pi_F_B = 0.0;
  double pi_L_spne = 0.0;
  double incentive_gap = 0.0;
  std::vector<std::string> warnings;
};

/// One row per s value, in input order. A failing row never aborts the
/// sweep: the error lands in the row's warnings as "error:<code>" and
/// the numeric fields are NaN. The row where the regime changes carries
/// a "transition" token; more than one change along the grid additionally
/// tags "multiple_transitions" (checked, not assumed).
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Cross product of s_values and benchmark scenarios, each row joining
/// the scenario equilibrium with the game payoff at that s so the
/// incentive gap is a column.
std::vector<BenchmarkSweepRow> run_benchmark_sweep(const SweepSpec& spec);

enum class EmitFormat { Csv, JsonLines };

/// CSV: fixed header, values at 12 significant digits, warnings joined
/// with ';'. JSON lines: identical keys, warnings as an array. Empty row
/// sets are an error and never create a file.
void emit(const std::vector<SweepRow>& rows, EmitFormat format,
          std::ostream& out);
void emit(const std::vector<SweepRow>& rows, EmitFormat format,
          const std::string& path);
void emit(const std::vector<BenchmarkSweepRow>& rows, EmitFormat format,
          std::ostream& out);
void emit(const std::vector<BenchmarkSweepRow>& rows, EmitFormat format,
          const std::string& path);

extern const char* const kSweepCsvHeader;
extern const char* const kBenchmarkCsvHeader;

}  // namespace mvno
