// Command-line front end: solve a single market, sweep the fee axis,
// tabulate the no-investment reference scenarios, or run the
// verification oracles.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error,
// 3 verification failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mvno/benchmark.hpp"
#include "mvno/market.hpp"
#include "mvno/oracles.hpp"
#include "mvno/spne.hpp"
#include "mvno/sweep.hpp"

namespace {

using nlohmann::json;

// Portable uniform doubles so identical seeds give identical reports on
// every platform (distribution objects are implementation-defined).
struct Draw {
  std::mt19937_64 eng;
  explicit Draw(std::uint64_t seed) : eng(seed) {}
  double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
};

std::vector<double> parse_s_range(const std::string& text) {
  double lo = 0.0, hi = 0.0, step = 0.0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
      step <= 0.0 || hi < lo)
    mvno::fail(mvno::Errc::BadGrid, "expected --s-range lo:hi:step");
  std::vector<double> values;
  for (int k = 0;; ++k) {
    const double s = lo + k * step;
    if (s > hi + 0.5 * step) break;
    values.push_back(std::min(s, hi));
  }
  return values;
}

json outcome_json(const mvno::EquilibriumOutcome& eq, double s, double gamma,
                  double c) {
  json cands = json::array();
  for (const auto& cand : eq.candidates) {
    cands.push_back(
        {{"I_L", cand.I_L},
         {"payoff", cand.payoff},
         {"source",
          cand.source == mvno::Stage1Candidate::Source::Boundary
              ? "boundary"
              : "interior_root"}});
  }
  return json{{"s", s},
              {"gamma", gamma},
              {"c", c},
              {"regime", eq.regime == mvno::Regime::OutcomeA ? "A" : "B"},
              {"I_L", eq.profile.I_L},
              {"I_F", eq.profile.I_F},
              {"sqrt_2_over_9s", mvno::investment_floor(s)},
              {"p_L", eq.profile.p_L},
              {"p_F", eq.profile.p_F},
              {"x_n", eq.split.x_n},
              {"n_L", eq.split.n_L},
              {"n_F", eq.split.n_F},
              {"pi_L", eq.payoffs.pi_L},
              {"pi_F", eq.payoffs.pi_F},
              {"foc_residual", eq.foc_residual},
              {"candidates", cands},
              {"warnings", eq.warnings}};
}

json report_json(const mvno::OracleReport& r) {
  return json{{"target", r.target},
              {"analytic_value", r.analytic_value},
              {"oracle_value", r.oracle_value},
              {"max_abs_gap", r.max_abs_gap},
              {"tolerance", r.tolerance},
              {"passed", r.passed}};
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) mvno::fail(mvno::Errc::IoFailure, "cannot open " + path);
  out << text;
  if (!out) mvno::fail(mvno::Errc::IoFailure, "write failed: " + path);
}

struct VerifyStats {
  int total = 0;
  int failed = 0;
};

void run_verify_suite(const std::string& suite, int cases,
                      std::uint64_t seed, std::ostream& out,
                      VerifyStats& stats) {
  Draw draw(seed);
  const auto note = [&](const mvno::OracleReport& r) {
    out << report_json(r).dump() << '\n';
    ++stats.total;
    if (!r.passed) ++stats.failed;
  };

  if (suite == "all" || suite == "pricing") {
    for (int k = 0; k < cases; ++k) {
      const double I_L = draw.uniform(0.05, 2.0);
      const double I_F = draw.uniform(0.0, I_L);
      const double c = draw.uniform(0.0, 2.0);
      note(mvno::price_best_response_oracle(
          I_L, I_F, c, mvno::GridSpec{c, c + 2.0, 1e-3}));
    }
  }
  if (suite == "all" || suite == "follower") {
    for (int k = 0; k < cases; ++k) {
      const double I_L = draw.uniform(0.05, 2.0);
      const double s = draw.uniform(0.05, 2.0);
      note(mvno::follower_investment_oracle(
          I_L, s, 1.0, mvno::GridSpec{0.0, I_L, 1e-5}));
    }
  }
  if (suite == "all" || suite == "leader") {
    for (int k = 0; k < cases; ++k) {
      const double s = draw.uniform(0.05, 2.0);
      const double gamma = draw.uniform(0.01, std::min(s, 0.5));
      const mvno::MarketParams params =
          mvno::validate_params(s, gamma, 1.0, 11.0);
      const double cap =
          10.0 * std::max(mvno::investment_floor(s),
                          1.0 / std::sqrt(std::max(gamma, 1e-6)));
      note(mvno::leader_investment_oracle(
          params, mvno::GridSpec{0.0, cap, 1e-4}));
    }
  }
  if (suite == "all" || suite == "agents") {
    const mvno::MarketParams params = mvno::validate_params(1.0, 0.1, 1.0, 10.0);
    for (int k = 0; k < cases; ++k) {
      const double I_L = draw.uniform(0.1, 2.0);
      const double I_F = draw.uniform(0.0, I_L);
      const double p_L = draw.uniform(0.5, 2.5);
      const double p_F = draw.uniform(0.5, 2.5);
      const mvno::StrategyProfile profile{I_L, I_F, p_L, p_F};
      const mvno::MarketSplit analytic = mvno::stage4_split(profile);
      const std::int64_t N = 100000;
      const mvno::MarketSplit empirical =
          mvno::hotelling_agent_oracle(profile, params, N);
      mvno::OracleReport r;
      r.target = "hotelling_agent_oracle";
      r.analytic_value = {analytic.n_L};
      r.oracle_value = {empirical.n_L};
      r.max_abs_gap = std::fabs(empirical.n_L - analytic.n_L);
      r.tolerance = 1.0 / static_cast<double>(N) + 1e-12;
      r.passed = r.max_abs_gap <= r.tolerance;
      note(r);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Leader-follower wireless market solver: equilibrium investments, "
      "prices and market shares, with brute-force verification oracles."};
  app.require_subcommand(1);

  double s = 1.0, gamma = 0.1, c = 1.0, v_star = 10.0;
  std::string s_range, format = "csv", out_path, suite = "all";
  bool literal_foc = false;
  int cases = 100;
  std::uint64_t seed = 20240811;
  std::vector<double> tl_list, tf_list;

  app.add_flag("--paper-literal-foc", literal_foc,
               "Use the uncorrected closed-form lease term in the stage-1 "
               "objective (comparison mode; oracles certify the default)");
  app.add_option("--seed", seed,
                 "Seed for the verify draws; the solver itself is "
                 "deterministic and ignores it");

  auto* solve = app.add_subcommand("solve", "Solve one market and print JSON");
  solve->fallthrough();
  solve->add_option("--s", s, "Per-resource fee")->required();
  solve->add_option("--gamma", gamma, "Marginal investment cost")->required();
  solve->add_option("--c", c, "Marginal cost per subscriber")->capture_default_str();
  solve->add_option("--v-star", v_star, "Common subscriber valuation")->capture_default_str();
  solve->add_option("--out", out_path, "Output file (default stdout)");

  auto* sweep =
      app.add_subcommand("sweep", "Equilibrium rows across a fee grid");
  sweep->fallthrough();
  sweep->add_option("--gamma", gamma, "Marginal investment cost")->capture_default_str();
  sweep->add_option("--c", c, "Marginal cost per subscriber")->capture_default_str();
  sweep->add_option("--s-range", s_range,
                    "Fee grid lo:hi:step (default 0.1:1.0:0.01)");
  sweep->add_option("--format", format, "csv or jsonl")->capture_default_str();
  sweep->add_option("--out", out_path, "Output file (default stdout)");

  auto* bench = app.add_subcommand(
      "benchmark", "No-investment reference scenarios joined with the "
                   "equilibrium payoff per fee");
  bench->fallthrough();
  bench->add_option("--gamma", gamma, "Marginal investment cost")->capture_default_str();
  bench->add_option("--c", c, "Marginal cost per subscriber")->capture_default_str();
  bench->add_option("--s-range", s_range,
                    "Fee grid lo:hi:step (default 0.1:1.0:0.01)");
  bench->add_option("--tl", tl_list,
                    "Scenario leader transport(s); repeat with --tf. "
                    "Defaults to (0.5,0.5), (0,1), (1,0); zeros are "
                    "evaluated as one-sided limits");
  bench->add_option("--tf", tf_list, "Scenario follower transport(s)");
  bench->add_option("--format", format, "csv or jsonl")->capture_default_str();
  bench->add_option("--out", out_path, "Output file (default stdout)");

  auto* verify = app.add_subcommand(
      "verify", "Run brute-force oracle suites; JSON line per report");
  verify->fallthrough();
  verify->add_option("--suite", suite,
                     "all, pricing, follower, leader or agents")
      ->capture_default_str();
  verify->add_option("--cases", cases, "Random cases per suite")->capture_default_str();
  verify->add_option("--out", out_path, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  const mvno::Stage1Options options{literal_foc};

  try {
    if (solve->parsed()) {
      const mvno::MarketParams params =
          mvno::validate_params(s, gamma, c, v_star);
      const mvno::EquilibriumOutcome eq = mvno::solve_spne(params, options);
      write_text(out_path, outcome_json(eq, s, gamma, c).dump(2) + "\n");
      return 0;
    }

    if (sweep->parsed() || bench->parsed()) {
      mvno::SweepSpec spec;
      spec.s_values = s_range.empty() ? mvno::default_s_grid()
                                      : parse_s_range(s_range);
      spec.gamma = gamma;
      spec.c = c;
      spec.options = options;
      const mvno::EmitFormat fmt = format == "jsonl"
                                       ? mvno::EmitFormat::JsonLines
                                       : mvno::EmitFormat::Csv;
      if (sweep->parsed()) {
        const auto rows = mvno::run_sweep(spec);
        if (out_path.empty() || out_path == "-")
          mvno::emit(rows, fmt, std::cout);
        else
          mvno::emit(rows, fmt, out_path);
      } else {
        if (tl_list.size() != tf_list.size())
          mvno::fail(mvno::Errc::BadGrid, "--tl and --tf must pair up");
        if (tl_list.empty())
          spec.benchmark_scenarios = {{0.5, 0.5}, {0.0, 1.0}, {1.0, 0.0}};
        else
          for (std::size_t i = 0; i < tl_list.size(); ++i)
            spec.benchmark_scenarios.emplace_back(tl_list[i], tf_list[i]);
        const auto rows = mvno::run_benchmark_sweep(spec);
        if (out_path.empty() || out_path == "-")
          mvno::emit(rows, fmt, std::cout);
        else
          mvno::emit(rows, fmt, out_path);
      }
      return 0;
    }

    if (verify->parsed()) {
      VerifyStats stats;
      if (out_path.empty() || out_path == "-") {
        run_verify_suite(suite, cases, seed, std::cout, stats);
      } else {
        std::ofstream out(out_path);
        if (!out) mvno::fail(mvno::Errc::IoFailure, "cannot open " + out_path);
        run_verify_suite(suite, cases, seed, out, stats);
      }
      std::cerr << "verify: " << (stats.total - stats.failed) << "/"
                << stats.total << " reports passed\n";
      return stats.failed == 0 ? 0 : 3;
    }
  } catch (const mvno::ModelError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return err.code() == mvno::Errc::IoFailure ? 2 : 1;
  }
  return 0;
}
