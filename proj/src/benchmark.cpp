#include "mvno/benchmark.hpp"

namespace mvno {

BenchmarkParams validate_benchmark(double t_L, double t_F, double c) {
  if (!(t_L > 0.0) || !(t_F > 0.0))
    fail(Errc::NonPositiveTransport,
         "both transport costs must be strictly positive");
  if (c < 0.0) fail(Errc::NegativeCost, "marginal cost must be nonnegative");
  return BenchmarkParams{t_L, t_F, c};
}

BenchmarkOutcome benchmark_equilibrium(const BenchmarkParams& params) {
  const BenchmarkParams p =
      validate_benchmark(params.t_L, params.t_F, params.c);

  BenchmarkOutcome out;
  out.p_F = p.c + (2.0 * p.t_L + p.t_F) / 3.0;
  out.p_L = p.c + (p.t_L + 2.0 * p.t_F) / 3.0;
  out.n_L = (2.0 * p.t_F + p.t_L) / (3.0 * (p.t_F + p.t_L));
  out.n_F = 1.0 - out.n_L;
  out.pi_L = out.n_L * (out.p_L - p.c);
  out.pi_F = out.n_F * (out.p_F - p.c);
  // Squared-share display form; equals the primitive payoff only when
  // t_L + t_F = 1.
  out.pi_L_display = out.n_L * out.n_L;
  out.pi_F_display = out.n_F * out.n_F;
  return out;
}

double incentive_gap(const MarketParams& params, const BenchmarkParams& bench,
                     const Stage1Options& options) {
  return solve_spne(params, options).payoffs.pi_L -
         benchmark_equilibrium(bench).pi_L;
}

}  // namespace mvno
