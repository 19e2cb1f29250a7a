#include "mvno/market.hpp"

#include <sstream>

namespace mvno {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NonPositiveFee: return "NonPositiveFee";
    case Errc::FeeBelowCost: return "FeeBelowCost";
    case Errc::NegativeCost: return "NegativeCost";
    case Errc::InsufficientValuation: return "InsufficientValuation";
    case Errc::ZeroLeaderInvestment: return "ZeroLeaderInvestment";
    case Errc::InvestmentOrderViolated: return "InvestmentOrderViolated";
    case Errc::SingularDenominator: return "SingularDenominator";
    case Errc::NonPositiveTransport: return "NonPositiveTransport";
    case Errc::BadGrid: return "BadGrid";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::CoverageViolated: return "CoverageViolated";
    case Errc::EmptyRows: return "EmptyRows";
    case Errc::IoFailure: return "IoFailure";
  }
  return "UnknownError";
}

void fail(Errc code, const std::string& what) {
  std::ostringstream msg;
  msg << errc_name(code) << ": " << what;
  throw ModelError(code, msg.str());
}

MarketParams validate_params(double s, double gamma, double c,
                             double v_star) {
  if (!(s > 0.0)) fail(Errc::NonPositiveFee, "per-resource fee must be positive");
  if (gamma < 0.0 || c < 0.0)
    fail(Errc::NegativeCost, "marginal costs must be nonnegative");
  if (s < gamma)
    fail(Errc::FeeBelowCost,
         "per-resource fee below the marginal investment cost");
  if (!(v_star > c + 2.0))
    fail(Errc::InsufficientValuation,
         "v_star must exceed c + 2 to keep every subscriber served");
  return MarketParams{s, gamma, c, v_star};
}

void validate_investments(double I_L, double I_F) {
  if (!(I_L > 0.0))
    fail(Errc::ZeroLeaderInvestment, "leader investment must be positive");
  if (I_F < 0.0 || I_F > I_L)
    fail(Errc::InvestmentOrderViolated,
         "follower reservation must lie in [0, I_L]");
}

TransportCosts transport_costs(double I_L, double I_F) {
  validate_investments(I_L, I_F);
  const double t_L = I_F / I_L;
  return TransportCosts{t_L, 1.0 - t_L};
}

double payoff_follower(const StrategyProfile& profile,
                       const MarketSplit& split, const MarketParams& params) {
  return split.n_F * (profile.p_F - params.c) -
         params.s * profile.I_F * profile.I_F;
}

double payoff_leader(const StrategyProfile& profile, const MarketSplit& split,
                     const MarketParams& params) {
  return split.n_L * (profile.p_L - params.c) +
         params.s * profile.I_F * profile.I_F -
         params.gamma * profile.I_L * profile.I_L;
}

}  // namespace mvno
