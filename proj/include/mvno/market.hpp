#pragma once

#include "mvno/errors.hpp"

namespace mvno {

/// Exogenous market environment: the per-resource fee quoted to the
/// follower (s), the leader's marginal investment cost (gamma), the
/// marginal cost per subscriber (c), and the common subscriber valuation
/// (v_star, consumed only by the discrete-agent simulator).
///
/// Construct through validate_params(); the raw aggregate is never
/// checked again afterwards. All operations in this library treat
/// MarketParams as immutable.
struct MarketParams {
  double s = 1.0;
  double gamma = 0.0;
  double c = 1.0;
  double v_star = 10.0;
};

/// A full strategy assignment: both investments and both prices.
struct StrategyProfile {
  double I_L = 1.0;  ///< leader infrastructure investment, > 0
  double I_F = 0.0;  ///< follower reserved resources, in [0, I_L]
  double p_L = 0.0;  ///< leader subscriber price
  double p_F = 0.0;  ///< follower subscriber price
};

/// Subscriber reluctance toward each provider. When derived from
/// investments, t_L = I_F / I_L and t_F = 1 - t_L, so the pair always
/// sums to one.
struct TransportCosts {
  double t_L = 0.0;
  double t_F = 1.0;
};

/// Market division. x_n is the unclamped indifference location; n_L is
/// x_n clamped to [0, 1] and n_F = 1 - n_L exactly.
struct MarketSplit {
  double x_n = 0.5;
  double n_L = 0.5;
  double n_F = 0.5;
};

struct PayoffPair {
  double pi_L = 0.0;
  double pi_F = 0.0;
};

/// Validates the exogenous quadruple.
///
/// Throws ModelError with code NonPositiveFee if s <= 0, FeeBelowCost if
/// s < gamma, NegativeCost if gamma < 0 or c < 0, and
/// InsufficientValuation if v_star <= c + 2 (the smallest valuation that
/// keeps every subscriber served at any equilibrium profile).
MarketParams validate_params(double s, double gamma, double c,
                             double v_star = 10.0);

/// Reluctances induced by the investment pair: t_L = I_F / I_L exactly,
/// t_F = 1 - t_L. I_L <= 0 and I_F outside [0, I_L] are hard errors, not
/// clamps.
TransportCosts transport_costs(double I_L, double I_F);

/// Throws unless I_L > 0 and 0 <= I_F <= I_L.
void validate_investments(double I_L, double I_F);

/// n_F * (p_F - c) - s * I_F^2
double payoff_follower(const StrategyProfile& profile,
                       const MarketSplit& split, const MarketParams& params);

/// n_L * (p_L - c) + s * I_F^2 - gamma * I_L^2
double payoff_leader(const StrategyProfile& profile, const MarketSplit& split,
                     const MarketParams& params);

}  // namespace mvno
