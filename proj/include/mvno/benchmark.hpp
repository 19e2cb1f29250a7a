#pragma once

#include "mvno/market.hpp"
#include "mvno/spne.hpp"

namespace mvno {

/// No-investment reference market: reluctances are exogenous parameters
/// instead of an investment ratio, and neither provider pays investment
/// or lease fees. Both transports must be strictly positive; scenarios
/// with a zero transport are evaluated as one-sided limits by the caller
/// (see sweep.hpp).
struct BenchmarkParams {
  double t_L = 0.5;
  double t_F = 0.5;
  double c = 1.0;
};

BenchmarkParams validate_benchmark(double t_L, double t_F, double c);

/// Price equilibrium of the reference market.
///
/// pi_L and pi_F are computed from the primitives, pi = n * (p - c).
/// pi_L_display / pi_F_display evaluate the squared-share display form
/// ((2 t_F + t_L) / (3 (t_F + t_L)))^2 and its mirror, which equals the
/// primitive payoff only on the simplex t_L + t_F = 1; both are carried
/// so off-simplex disagreement is visible in diagnostics.
struct BenchmarkOutcome {
  double p_L = 0.0;
  double p_F = 0.0;
  double n_L = 0.5;
  double n_F = 0.5;
  double pi_L = 0.0;
  double pi_F = 0.0;
  double pi_L_display = 0.0;
  double pi_F_display = 0.0;
};

/// p_F = c + (2 t_L + t_F) / 3, p_L = c + (t_L + 2 t_F) / 3,
/// n_L = (2 t_F + t_L) / (3 (t_F + t_L)), n_F = 1 - n_L.
BenchmarkOutcome benchmark_equilibrium(const BenchmarkParams& params);

/// Leader's gain from investing and leasing over sitting out:
/// solve_spne(params).pi_L - benchmark_equilibrium(bench).pi_L.
double incentive_gap(const MarketParams& params, const BenchmarkParams& bench,
                     const Stage1Options& options = {});

}  // namespace mvno
