#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvno/benchmark.hpp"
#include "mvno/market.hpp"
#include "mvno/spne.hpp"

namespace mvno {

/// Uniform evaluation grid lo, lo + step, ..., up to hi (hi included when
/// it lands on the lattice). Rejected if lo >= hi or the point count
/// would exceed 1e7.
struct GridSpec {
  double lo = 0.0;
  double hi = 1.0;
  double step = 1e-3;
};

void validate_grid(const GridSpec& grid);

/// Outcome of one closed-form-versus-brute-force comparison.
/// passed is exactly max_abs_gap <= tolerance.
struct OracleReport {
  std::string target;
  std::vector<double> analytic_value;
  std::vector<double> oracle_value;
  double max_abs_gap = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Certifies the stage-3 price pair by simultaneous best-response
/// iteration on the grid from three starts (both corners and the
/// midpoint). Every start must reach a best-response fixed point; if a
/// two-cycle appears the iteration falls back to sequential updates, and
/// NoConvergence is thrown after 10^4 rounds either way. All distinct
/// fixed points found are compared against the closed form (the gap is
/// the worst one, so spurious equilibria fail loudly), and the winner is
/// additionally certified as a grid Nash equilibrium: no grid deviation,
/// corner prices included, may raise either payoff.
/// Tolerance: 2 * grid.step.
OracleReport price_best_response_oracle(double I_L, double I_F, double c,
                                        const GridSpec& grid);

/// Same certification for the exogenous-transport price equilibrium.
OracleReport benchmark_price_oracle(const BenchmarkParams& params,
                                    const GridSpec& grid);

/// Exhaustively maximizes the follower's stage-2 payoff on a grid over
/// [0, I_L] (ties prefer the larger reservation) and compares both the
/// argmax and the achieved payoff against stage2_investment.
/// Tolerance: 2 * grid.step. The c argument flows through the composed
/// stage-3/4 pipeline and cancels, as it must.
OracleReport follower_investment_oracle(double I_L, double s, double c,
                                        const GridSpec& grid);

/// Exhaustively maximizes the leader's composed continuation payoff
/// (each grid I_L runs stages 2-4 and payoff_leader; no closed form on
/// this path) and compares the achieved value against
/// stage1_investment's reported optimum. The branch junction
/// investment_floor(s) is appended to the grid because the objective is
/// kinked there and a uniform lattice straddles the kink.
/// Values are compared rather than argmax locations: the s = gamma
/// plateau makes the argmax ill-conditioned while the value stays exact.
/// Tolerance: 1e-6.
OracleReport leader_investment_oracle(const MarketParams& params,
                                      const GridSpec& grid,
                                      const Stage1Options& options = {});

/// Discrete Hotelling check of the stage-4 split: N agents at midpoint
/// positions (i + 0.5) / N each join the provider with the higher
/// utility v_star - t * distance - price (ties join the leader).
/// Returns the empirical fractions; the empirical n_L converges to the
/// continuum split at rate 1/N. Throws CoverageViolated if any agent's
/// best utility is negative (v_star too small for the profile).
MarketSplit hotelling_agent_oracle(const StrategyProfile& profile,
                                   const MarketParams& params, std::int64_t N);

}  // namespace mvno
