#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "mvno/sweep.hpp"
#include "test_util.hpp"

using namespace mvno;
using testutil::near;

namespace {

SweepSpec figure_spec(double gamma) {
  SweepSpec spec;
  spec.gamma = gamma;
  spec.c = 1.0;
  for (int k = static_cast<int>(std::ceil(gamma * 100.0 - 1e-9)); k <= 100;
       ++k) {
    if (k < 10) continue;
    spec.s_values.push_back(k / 100.0);
  }
  if (spec.s_values.empty() || spec.s_values.front() < gamma)
    throw std::logic_error("bad test grid");
  return spec;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

TEST_CASE("sweep spec validation") {
  SweepSpec spec;
  CHECK_THROWS_AS(run_sweep(spec), ModelError);  // empty grid
  spec.s_values = {0.2, 0.2};
  CHECK_THROWS_AS(run_sweep(spec), ModelError);  // not strictly increasing
  spec.s_values = {0.05, 0.2};
  spec.gamma = 0.1;
  CHECK_THROWS_AS(run_sweep(spec), ModelError);  // s below gamma
}

TEST_CASE("figure sweep at gamma 0.1 has one regime change") {
  const auto rows = run_sweep(figure_spec(0.1));
  REQUIRE(rows.size() == 91);

  int transitions = 0;
  std::size_t idx = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].regime != rows[i - 1].regime) {
      ++transitions;
      idx = i;
    }
  }
  REQUIRE(transitions == 1);
  CHECK(rows[idx - 1].regime == 'B');
  CHECK(rows[idx].regime == 'A');
  CHECK(near(rows[idx].s, 0.81, 1e-12));
  CHECK(std::find(rows[idx].warnings.begin(), rows[idx].warnings.end(),
                  "transition") != rows[idx].warnings.end());

  // Reservation drops discontinuously at the change.
  CHECK(rows[idx].I_F < rows[idx - 1].I_F - 0.1);

  // Investments fall with the fee inside each regime.
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].regime != rows[i - 1].regime) continue;
    CHECK(rows[i].I_L <= rows[i - 1].I_L + 1e-9);
    CHECK(rows[i].I_F <= rows[i - 1].I_F + 1e-9);
  }

  for (const auto& r : rows) {
    CHECK(r.n_L + r.n_F == 1.0);
    CHECK(near(r.sqrt_2_over_9s, investment_floor(r.s), 1e-15));
  }
}

TEST_CASE("figure sweep at gamma 0.15 never leaves the floor") {
  const auto rows = run_sweep(figure_spec(0.15));
  for (const auto& r : rows) CHECK(r.regime == 'B');
}

TEST_CASE("single-point sweep at the base environment") {
  SweepSpec spec;
  spec.s_values = {1.0};
  spec.gamma = 0.1;
  spec.c = 1.0;
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].regime == 'A');
  CHECK(near(rows[0].I_L, 0.7901949816773793, 1e-8));
  CHECK(near(rows[0].t_L, rows[0].I_F / rows[0].I_L, 1e-15));
  CHECK(rows[0].warnings.empty());
}

TEST_CASE("zero investment cost rows carry the cap warning") {
  SweepSpec spec;
  spec.s_values = {0.2, 0.5};
  spec.gamma = 0.0;
  const auto rows = run_sweep(spec);
  for (const auto& r : rows) {
    CHECK(r.regime == 'B');
    CHECK(std::find(r.warnings.begin(), r.warnings.end(), "search_cap_hit") !=
          r.warnings.end());
  }

  spec.options.literal_foc = true;
  const auto literal_rows = run_sweep(spec);
  for (const auto& r : literal_rows) {
    CHECK(r.regime == 'A');
    CHECK(std::isfinite(r.I_L));
  }
}

TEST_CASE("reference scenarios join the equilibrium payoff") {
  SweepSpec spec;
  spec.s_values = {0.2};
  spec.gamma = 0.1;
  spec.c = 1.0;
  spec.benchmark_scenarios = {{0.5, 0.5}, {0.0, 1.0}, {1.0, 0.0}};
  const auto rows = run_benchmark_sweep(spec);
  REQUIRE(rows.size() == 3);

  CHECK(near(rows[0].pi_L_B, 0.25, 1e-12));
  CHECK(rows[0].warnings.empty());
  CHECK(near(rows[1].pi_L_B, 4.0 / 9.0, 1e-6));
  CHECK(near(rows[2].pi_L_B, 1.0 / 9.0, 1e-6));
  for (std::size_t k = 1; k < 3; ++k) {
    CHECK(std::find(rows[k].warnings.begin(), rows[k].warnings.end(),
                    "limit_evaluation") != rows[k].warnings.end());
  }
  // Floor regime at s = 2 gamma: pi_L = 2/9 everywhere on this row set.
  for (const auto& r : rows) {
    CHECK(near(r.pi_L_spne, 2.0 / 9.0, 1e-12));
    CHECK(near(r.incentive_gap, r.pi_L_spne - r.pi_L_B, 1e-15));
  }
  CHECK(rows[2].pi_L_B < rows[0].pi_L_B);
  CHECK(rows[0].pi_L_B < rows[1].pi_L_B);

  // Scenario payoffs do not depend on the fee.
  spec.s_values = {0.2, 0.5, 1.0};
  const auto more = run_benchmark_sweep(spec);
  REQUIRE(more.size() == 9);
  for (std::size_t k = 0; k < more.size(); ++k)
    CHECK(more[k].pi_L_B == rows[k % 3].pi_L_B);
}

TEST_CASE("csv emission shape and header") {
  SweepSpec spec;
  spec.s_values = {1.0};
  spec.gamma = 0.1;
  const auto rows = run_sweep(spec);

  std::ostringstream out;
  emit(rows, EmitFormat::Csv, out);
  std::istringstream in(out.str());
  std::string header, row, extra;
  REQUIRE(std::getline(in, header));
  REQUIRE(std::getline(in, row));
  CHECK_FALSE(std::getline(in, extra));
  CHECK(header ==
        "s,gamma,c,regime,I_L,I_F,sqrt_2_over_9s,p_L,p_F,n_L,n_F,pi_L,pi_F,"
        "t_L,t_F,foc_residual,warnings");
  CHECK(split_csv(row).size() == 17);
  CHECK(split_csv(row)[3] == "A");
}

TEST_CASE("empty row sets never create a file") {
  const std::string path = "/tmp/mvno_empty_rows_test.csv";
  std::remove(path.c_str());
  std::vector<SweepRow> empty;
  CHECK_THROWS_AS(emit(empty, EmitFormat::Csv, path), ModelError);
  std::ifstream probe(path);
  CHECK_FALSE(probe.good());
}

TEST_CASE("json lines are parseable objects with the csv keys") {
  SweepSpec spec;
  spec.s_values = {0.3, 0.5, 1.0};
  spec.gamma = 0.1;
  const auto rows = run_sweep(spec);

  std::ostringstream out;
  emit(rows, EmitFormat::JsonLines, out);
  std::istringstream in(out.str());
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    const auto obj = nlohmann::json::parse(line);
    ++count;
    for (const char* key :
         {"s", "gamma", "c", "regime", "I_L", "I_F", "sqrt_2_over_9s", "p_L",
          "p_F", "n_L", "n_F", "pi_L", "pi_F", "t_L", "t_F", "foc_residual",
          "warnings"}) {
      CHECK(obj.contains(key));
    }
    CHECK(obj["warnings"].is_array());
  }
  CHECK(count == 3);
}

TEST_CASE("csv round-trips to twelve significant digits") {
  const auto rows = run_sweep(figure_spec(0.1));
  std::ostringstream out;
  emit(rows, EmitFormat::Csv, out);

  std::istringstream in(out.str());
  std::string line;
  REQUIRE(std::getline(in, line));  // header
  std::size_t i = 0;
  while (std::getline(in, line)) {
    const auto fields = split_csv(line);
    REQUIRE(fields.size() == 17);
    const double s = std::stod(fields[0]);
    const double pi_L = std::stod(fields[11]);
    CHECK(near(s, rows[i].s, std::fabs(rows[i].s) * 1e-11));
    CHECK(near(pi_L, rows[i].pi_L, std::fabs(rows[i].pi_L) * 1e-11));
    ++i;
  }
  CHECK(i == rows.size());
}

TEST_CASE("identical sweeps are byte-identical") {
  const auto spec = figure_spec(0.1);
  std::ostringstream a, b;
  emit(run_sweep(spec), EmitFormat::Csv, a);
  emit(run_sweep(spec), EmitFormat::Csv, b);
  CHECK(a.str() == b.str());
}
