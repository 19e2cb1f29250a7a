#include "mvno/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace mvno {

const char* const kSweepCsvHeader =
    "s,gamma,c,regime,I_L,I_F,sqrt_2_over_9s,p_L,p_F,n_L,n_F,pi_L,pi_F,t_L,"
    "t_F,foc_residual,warnings";
const char* const kBenchmarkCsvHeader =
    "s,gamma,c,scenario,t_L,t_F,p_L_B,p_F_B,n_L_B,n_F_B,pi_L_B,pi_F_B,"
    "pi_L_spne,incentive_gap,warnings";

namespace {

constexpr double kLimitEpsilon = 1e-9;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string join_warnings(const std::vector<std::string>& warnings) {
  std::string out;
  for (std::size_t i = 0; i < warnings.size(); ++i) {
    if (i) out += ';';
    out += warnings[i];
  }
  return out;
}

double sweep_v_star(double c) { return c + 10.0; }

}  // namespace

void validate_sweep(const SweepSpec& spec) {
  if (spec.s_values.empty()) fail(Errc::BadGrid, "empty s grid");
  double prev = -1.0;
  for (double s : spec.s_values) {
    if (!(s > 0.0)) fail(Errc::NonPositiveFee, "s values must be positive");
    if (s < spec.gamma)
      fail(Errc::FeeBelowCost, "every s must be at least gamma");
    if (s <= prev) fail(Errc::BadGrid, "s values must be strictly increasing");
    prev = s;
  }
  if (spec.gamma < 0.0 || spec.c < 0.0)
    fail(Errc::NegativeCost, "gamma and c must be nonnegative");
}

std::vector<double> default_s_grid() {
  std::vector<double> s;
  for (int k = 10; k <= 100; ++k) s.push_back(k / 100.0);
  return s;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate_sweep(spec);
  std::vector<SweepRow> rows;
  rows.reserve(spec.s_values.size());

  for (double s : spec.s_values) {
    SweepRow row;
    row.s = s;
    row.gamma = spec.gamma;
    row.c = spec.c;
    row.sqrt_2_over_9s = investment_floor(s);
    try {
      const MarketParams params =
          validate_params(s, spec.gamma, spec.c, sweep_v_star(spec.c));
      const EquilibriumOutcome eq = solve_spne(params, spec.options);
      row.regime = eq.regime == Regime::OutcomeA ? 'A' : 'B';
      row.I_L = eq.profile.I_L;
      row.I_F = eq.profile.I_F;
      row.p_L = eq.profile.p_L;
      row.p_F = eq.profile.p_F;
      row.n_L = eq.split.n_L;
      row.n_F = eq.split.n_F;
      row.pi_L = eq.payoffs.pi_L;
      row.pi_F = eq.payoffs.pi_F;
      const TransportCosts t = transport_costs(eq.profile.I_L, eq.profile.I_F);
      row.t_L = t.t_L;
      row.t_F = t.t_F;
      row.foc_residual = eq.foc_residual;
      row.warnings = eq.warnings;
    } catch (const ModelError& err) {
      row.regime = '?';
      row.I_L = row.I_F = row.p_L = row.p_F = kNaN;
      row.n_L = row.n_F = row.pi_L = row.pi_F = kNaN;
      row.t_L = row.t_F = row.foc_residual = kNaN;
      row.warnings.push_back(std::string("error:") + errc_name(err.code()));
    }
    rows.push_back(std::move(row));
  }

  // Regime transitions are observed, not assumed: tag each change and
  // complain when the grid shows more than one.
  int transitions = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].regime == '?' || rows[i - 1].regime == '?') continue;
    if (rows[i].regime != rows[i - 1].regime) {
      rows[i].warnings.push_back("transition");
      if (++transitions > 1) rows[i].warnings.push_back("multiple_transitions");
    }
  }
  return rows;
}

std::vector<BenchmarkSweepRow> run_benchmark_sweep(const SweepSpec& spec) {
  validate_sweep(spec);
  if (spec.benchmark_scenarios.empty())
    fail(Errc::EmptyRows, "no benchmark scenarios supplied");

  std::vector<BenchmarkSweepRow> rows;
  rows.reserve(spec.s_values.size() * spec.benchmark_scenarios.size());

  for (double s : spec.s_values) {
    const MarketParams params =
        validate_params(s, spec.gamma, spec.c, sweep_v_star(spec.c));
    const double pi_L_spne = solve_spne(params, spec.options).payoffs.pi_L;

    for (std::size_t k = 0; k < spec.benchmark_scenarios.size(); ++k) {
      auto [t_L, t_F] = spec.benchmark_scenarios[k];
      BenchmarkSweepRow row;
      row.s = s;
      row.gamma = spec.gamma;
      row.c = spec.c;
      row.scenario = static_cast<int>(k) + 1;
      bool limited = false;
      if (t_L <= 0.0) {
        t_L = kLimitEpsilon;
        limited = true;
      }
      if (t_F <= 0.0) {
        t_F = kLimitEpsilon;
        limited = true;
      }
      if (limited) row.warnings.push_back("limit_evaluation");
      row.t_L = t_L;
      row.t_F = t_F;
      const BenchmarkOutcome b =
          benchmark_equilibrium(BenchmarkParams{t_L, t_F, spec.c});
      row.p_L_B = b.p_L;
      row.p_F_B = b.p_F;
      row.n_L_B = b.n_L;
      row.n_F_B = b.n_F;
      row.pi_L_B = b.pi_L;
      row.pi_F_B = b.pi_F;
      row.pi_L_spne = pi_L_spne;
      row.incentive_gap = pi_L_spne - b.pi_L;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

namespace {

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    out << fmt12(r.s) << ',' << fmt12(r.gamma) << ',' << fmt12(r.c) << ','
        << (r.regime == '?' ? "" : std::string(1, r.regime)) << ','
        << fmt12(r.I_L) << ',' << fmt12(r.I_F) << ','
        << fmt12(r.sqrt_2_over_9s) << ',' << fmt12(r.p_L) << ','
        << fmt12(r.p_F) << ',' << fmt12(r.n_L) << ',' << fmt12(r.n_F) << ','
        << fmt12(r.pi_L) << ',' << fmt12(r.pi_F) << ',' << fmt12(r.t_L) << ','
        << fmt12(r.t_F) << ',' << fmt12(r.foc_residual) << ','
        << join_warnings(r.warnings) << '\n';
  }
}

void emit_csv(const std::vector<BenchmarkSweepRow>& rows, std::ostream& out) {
  out << kBenchmarkCsvHeader << '\n';
  for (const auto& r : rows) {
    out << fmt12(r.s) << ',' << fmt12(r.gamma) << ',' << fmt12(r.c) << ','
        << r.scenario << ',' << fmt12(r.t_L) << ',' << fmt12(r.t_F) << ','
        << fmt12(r.p_L_B) << ',' << fmt12(r.p_F_B) << ',' << fmt12(r.n_L_B)
        << ',' << fmt12(r.n_F_B) << ',' << fmt12(r.pi_L_B) << ','
        << fmt12(r.pi_F_B) << ',' << fmt12(r.pi_L_spne) << ','
        << fmt12(r.incentive_gap) << ',' << join_warnings(r.warnings) << '\n';
  }
}

nlohmann::json row_json(const SweepRow& r) {
  return nlohmann::json{{"s", r.s},
                        {"gamma", r.gamma},
                        {"c", r.c},
                        {"regime", r.regime == '?' ? "" : std::string(1, r.regime)},
                        {"I_L", r.I_L},
                        {"I_F", r.I_F},
                        {"sqrt_2_over_9s", r.sqrt_2_over_9s},
                        {"p_L", r.p_L},
                        {"p_F", r.p_F},
                        {"n_L", r.n_L},
                        {"n_F", r.n_F},
                        {"pi_L", r.pi_L},
                        {"pi_F", r.pi_F},
                        {"t_L", r.t_L},
                        {"t_F", r.t_F},
                        {"foc_residual", r.foc_residual},
                        {"warnings", r.warnings}};
}

nlohmann::json row_json(const BenchmarkSweepRow& r) {
  return nlohmann::json{{"s", r.s},
                        {"gamma", r.gamma},
                        {"c", r.c},
                        {"scenario", r.scenario},
                        {"t_L", r.t_L},
                        {"t_F", r.t_F},
                        {"p_L_B", r.p_L_B},
                        {"p_F_B", r.p_F_B},
                        {"n_L_B", r.n_L_B},
                        {"n_F_B", r.n_F_B},
                        {"pi_L_B", r.pi_L_B},
                        {"pi_F_B", r.pi_F_B},
                        {"pi_L_spne", r.pi_L_spne},
                        {"incentive_gap", r.incentive_gap},
                        {"warnings", r.warnings}};
}

template <class Row>
void emit_rows(const std::vector<Row>& rows, EmitFormat format,
               std::ostream& out) {
  if (rows.empty()) fail(Errc::EmptyRows, "nothing to emit");
  if (format == EmitFormat::Csv) {
    emit_csv(rows, out);
  } else {
    for (const auto& r : rows) out << row_json(r).dump() << '\n';
  }
  if (!out) fail(Errc::IoFailure, "stream write failed");
}

template <class Row>
void emit_rows_to_path(const std::vector<Row>& rows, EmitFormat format,
                       const std::string& path) {
  if (rows.empty()) fail(Errc::EmptyRows, "nothing to emit: " + path);
  std::ofstream out(path);
  if (!out) fail(Errc::IoFailure, "cannot open " + path);
  emit_rows(rows, format, out);
  out.flush();
  if (!out) fail(Errc::IoFailure, "write failed: " + path);
}

}  // namespace

void emit(const std::vector<SweepRow>& rows, EmitFormat format,
          std::ostream& out) {
  emit_rows(rows, format, out);
}

void emit(const std::vector<SweepRow>& rows, EmitFormat format,
          const std::string& path) {
  emit_rows_to_path(rows, format, path);
}

void emit(const std::vector<BenchmarkSweepRow>& rows, EmitFormat format,
          std::ostream& out) {
  emit_rows(rows, format, out);
}

void emit(const std::vector<BenchmarkSweepRow>& rows, EmitFormat format,
          const std::string& path) {
  emit_rows_to_path(rows, format, path);
}

}  // namespace mvno
