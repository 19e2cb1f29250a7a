// Property suite: randomized identities that every build must hold to
// tight tolerances. Case counts are deliberately high; the whole file
// still runs in a couple of seconds.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "mvno/oracles.hpp"
#include "mvno/sweep.hpp"
#include "test_util.hpp"

using namespace mvno;
using testutil::near;
using testutil::Rng;

TEST_CASE("property: stage-3 margin identity (3000 cases)") {
  Rng rng(101);
  for (int k = 0; k < 3000; ++k) {
    const double I_L = rng.uniform(1e-3, 5.0);
    const double I_F = rng.uniform(0.0, I_L);
    const double c = rng.uniform(0.0, 3.0);
    const PricePair p = stage3_prices(I_L, I_F, c);
    CHECK(near((p.p_L - c) + (p.p_F - c), 1.0, 1e-12));
  }
}

TEST_CASE("property: stage-3 first-order system (3000 cases)") {
  Rng rng(102);
  for (int k = 0; k < 3000; ++k) {
    const double I_L = rng.uniform(1e-3, 5.0);
    const double I_F = rng.uniform(0.0, I_L);
    const double c = rng.uniform(0.0, 3.0);
    const PricePair p = stage3_prices(I_L, I_F, c);
    CHECK(near(2.0 * p.p_F - p.p_L, I_F / I_L + c, 1e-12));
    CHECK(near(2.0 * p.p_L - p.p_F, (I_L - I_F) / I_L + c, 1e-12));
  }
}

TEST_CASE("property: split normalization and clamping (3000 cases)") {
  Rng rng(103);
  for (int k = 0; k < 3000; ++k) {
    const double I_L = rng.uniform(1e-3, 5.0);
    const StrategyProfile profile{I_L, rng.uniform(0.0, I_L),
                                  rng.uniform(-1.0, 4.0),
                                  rng.uniform(-1.0, 4.0)};
    const MarketSplit split = stage4_split(profile);
    CHECK(split.n_L + split.n_F == 1.0);
    CHECK(split.n_L >= 0.0);
    CHECK(split.n_L <= 1.0);
    if (split.x_n >= 0.0 && split.x_n <= 1.0) CHECK(split.n_L == split.x_n);
    if (split.x_n < 0.0) CHECK(split.n_L == 0.0);
    if (split.x_n > 1.0) CHECK(split.n_L == 1.0);
  }
}

TEST_CASE("property: follower response continuity at the junction "
          "(500 x 8 cases)") {
  Rng rng(104);
  for (int k = 0; k < 500; ++k) {
    const double s = rng.uniform(0.02, 3.0);
    const double floor_I = investment_floor(s);
    for (double delta :
         {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9}) {
      const double I = floor_I * (1.0 + delta);
      CHECK(std::fabs(stage2_investment(I, s) - I) <=
            6.0 * delta * floor_I + 1e-15);
    }
  }
}

TEST_CASE("property: lease fee cancels from the payoff total (2000 cases)") {
  Rng rng(105);
  for (int k = 0; k < 2000; ++k) {
    const double gamma = rng.uniform(0.0, 0.5);
    const double s = std::max(gamma, rng.uniform(0.01, 2.0));
    const double c = rng.uniform(0.0, 2.0);
    const MarketParams p{s, gamma, c, c + 10.0};
    const double I_L = rng.uniform(1e-2, 3.0);
    const StrategyProfile profile{I_L, rng.uniform(0.0, I_L),
                                  rng.uniform(c - 0.5, c + 2.0),
                                  rng.uniform(c - 0.5, c + 2.0)};
    const MarketSplit split = stage4_split(profile);
    const double total = payoff_leader(profile, split, p) +
                         payoff_follower(profile, split, p);
    CHECK(near(total,
               split.n_L * (profile.p_L - c) + split.n_F * (profile.p_F - c) -
                   gamma * I_L * I_L,
               1e-12));
  }
}

TEST_CASE("property: agent split tracks the continuum split (200 cases)") {
  Rng rng(106);
  const MarketParams p = validate_params(1.0, 0.1, 1.0, 10.0);
  for (int k = 0; k < 200; ++k) {
    const double I_L = rng.uniform(0.1, 2.0);
    const StrategyProfile profile{I_L, rng.uniform(0.0, I_L),
                                  rng.uniform(0.5, 2.5),
                                  rng.uniform(0.5, 2.5)};
    const MarketSplit analytic = stage4_split(profile);
    const MarketSplit empirical = hotelling_agent_oracle(profile, p, 2000);
    CHECK(std::fabs(empirical.n_L - analytic.n_L) <= 1.0 / 2000.0 + 1e-12);
  }
}

TEST_CASE("property: transports sum to one (1000 cases)") {
  Rng rng(107);
  for (int k = 0; k < 1000; ++k) {
    const double I_L = rng.uniform(1e-3, 5.0);
    const TransportCosts t = transport_costs(I_L, rng.uniform(0.0, I_L));
    CHECK(t.t_L + t.t_F == 1.0);
    CHECK(t.t_L >= 0.0);
    CHECK(t.t_L <= 1.0);
  }
}

TEST_CASE("property: csv round-trip preserves twelve digits (600 rows)") {
  Rng rng(108);
  std::vector<SweepRow> rows;
  SweepSpec spec;
  spec.gamma = 0.07;
  spec.c = 1.0;
  for (int k = 0; k < 600; ++k)
    spec.s_values.push_back(0.1 + 0.9 * k / 599.0 + rng.uniform(0.0, 1e-4));
  std::sort(spec.s_values.begin(), spec.s_values.end());
  rows = run_sweep(spec);
  REQUIRE(rows.size() == 600);

  std::ostringstream out;
  emit(rows, EmitFormat::Csv, out);
  std::istringstream in(out.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  std::size_t i = 0;
  while (std::getline(in, line)) {
    std::vector<double> numeric;
    std::string field;
    std::istringstream fields(line);
    int col = 0;
    while (std::getline(fields, field, ',')) {
      if (col != 3 && col != 16 && !field.empty())
        numeric.push_back(std::stod(field));
      ++col;
    }
    REQUIRE(numeric.size() == 15);
    const SweepRow& r = rows[i];
    const double expect[15] = {r.s,   r.gamma, r.c,   r.I_L,  r.I_F,
                               r.sqrt_2_over_9s, r.p_L, r.p_F, r.n_L,
                               r.n_F, r.pi_L,  r.pi_F, r.t_L, r.t_F,
                               r.foc_residual};
    for (int j = 0; j < 15; ++j)
      CHECK(near(numeric[j], expect[j],
                 std::max(std::fabs(expect[j]) * 1e-11, 1e-280)));
    ++i;
  }
  CHECK(i == rows.size());
}
