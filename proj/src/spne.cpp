#include "mvno/spne.hpp"

#include <algorithm>
#include <cmath>

namespace mvno {

namespace {

constexpr int kScanPoints = 2000;
constexpr double kBracketWidth = 1e-10;
constexpr double kTieTolerance = 1e-12;
constexpr double kScanLift = 1e-9;  // relative offset above the junction

// Interior-branch continuation payoff, defined wherever 9 s I^2 > 1.
// Used directly by the root scan so finite differences never straddle
// the kink at the junction.
double interior_payoff(double I_L, const MarketParams& p, bool literal) {
  const double denom = 9.0 * p.s * I_L * I_L - 1.0;
  if (denom <= 0.0)
    fail(Errc::SingularDenominator,
         "interior branch requires 9 s I_L^2 > 1");
  const double u = 1.0 / denom;  // follower reservation share I_F / I_L
  const double margin = (2.0 - u) / 3.0;
  const double lease =
      literal ? p.s * I_L * u : p.s * (I_L * u) * (I_L * u);
  return margin * margin + lease - p.gamma * I_L * I_L;
}

double floor_branch_payoff(double I_L, const MarketParams& p) {
  return 1.0 / 9.0 + (p.s - p.gamma) * I_L * I_L;
}

double fd_derivative(double I_L, const MarketParams& p, bool literal) {
  const double h = 1e-6 * std::max(1.0, I_L);
  return (interior_payoff(I_L + h, p, literal) -
          interior_payoff(I_L - h, p, literal)) /
         (2.0 * h);
}

double search_cap(const MarketParams& p) {
  return 10.0 * std::max(investment_floor(p.s),
                         1.0 / std::sqrt(std::max(p.gamma, 1e-6)));
}

}  // namespace

double investment_floor(double s) { return std::sqrt(2.0 / (9.0 * s)); }

MarketSplit stage4_split(const StrategyProfile& profile) {
  validate_investments(profile.I_L, profile.I_F);
  const double x_n =
      (profile.I_L - profile.I_F) / profile.I_L + profile.p_F - profile.p_L;
  const double n_L = std::clamp(x_n, 0.0, 1.0);
  return MarketSplit{x_n, n_L, 1.0 - n_L};
}

PricePair stage3_prices(double I_L, double I_F, double c) {
  validate_investments(I_L, I_F);
  return PricePair{c + (2.0 * I_L - I_F) / (3.0 * I_L),
                   c + (I_L + I_F) / (3.0 * I_L)};
}

double stage2_investment(double I_L, double s) {
  if (!(I_L > 0.0))
    fail(Errc::ZeroLeaderInvestment, "leader investment must be positive");
  if (!(s > 0.0)) fail(Errc::NonPositiveFee, "fee must be positive");
  if (I_L <= investment_floor(s)) return I_L;  // junction tie: reserve all
  return I_L / (9.0 * s * I_L * I_L - 1.0);
}

double stage1_objective(double I_L, const MarketParams& params,
                        const Stage1Options& options) {
  if (!(I_L > 0.0))
    fail(Errc::ZeroLeaderInvestment, "leader investment must be positive");
  if (I_L <= investment_floor(params.s))
    return floor_branch_payoff(I_L, params);
  return interior_payoff(I_L, params, options.literal_foc);
}

Stage1Result stage1_investment(const MarketParams& params,
                               const Stage1Options& options) {
  const bool literal = options.literal_foc;
  const double floor_I = investment_floor(params.s);
  const double cap = search_cap(params);
  const double lo = floor_I * (1.0 + kScanLift);

  // Log-spaced scan of the finite-difference derivative.
  const double ratio = cap / lo;
  std::vector<double> pts(kScanPoints);
  std::vector<double> der(kScanPoints);
  for (int k = 0; k < kScanPoints; ++k) {
    pts[k] = lo * std::pow(ratio, static_cast<double>(k) / (kScanPoints - 1));
    der[k] = fd_derivative(pts[k], params, literal);
  }

  std::vector<double> roots;
  for (int k = 0; k + 1 < kScanPoints; ++k) {
    if (der[k] == 0.0) {
      roots.push_back(pts[k]);
      continue;
    }
    if ((der[k] > 0.0) == (der[k + 1] > 0.0)) continue;
    double a = pts[k], b = pts[k + 1], fa = der[k];
    while (b - a > kBracketWidth) {
      const double mid = 0.5 * (a + b);
      const double fm = fd_derivative(mid, params, literal);
      if (fm == 0.0) {
        a = b = mid;
      } else if ((fm > 0.0) == (fa > 0.0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    roots.push_back(0.5 * (a + b));
  }

  Stage1Result result;
  result.candidates.push_back(Stage1Candidate{
      floor_I, floor_branch_payoff(floor_I, params),
      Stage1Candidate::Source::Boundary});
  for (double r : roots) {
    result.candidates.push_back(Stage1Candidate{
        r, interior_payoff(r, params, literal),
        Stage1Candidate::Source::InteriorRoot});
  }

  // Payoff argmax; ties within 1e-12 keep the earlier (smaller) candidate,
  // so exact ties resolve to the junction.
  const Stage1Candidate* best = &result.candidates.front();
  for (const auto& cand : result.candidates) {
    if (cand.payoff > best->payoff + kTieTolerance) best = &cand;
  }

  result.I_L = best->I_L;
  result.regime = best->source == Stage1Candidate::Source::InteriorRoot
                      ? Regime::OutcomeA
                      : Regime::OutcomeB;
  result.foc_residual = result.regime == Regime::OutcomeA
                            ? std::fabs(fd_derivative(best->I_L, params, literal))
                            : 0.0;
  result.search_cap_hit = fd_derivative(cap, params, literal) > 0.0;
  return result;
}

EquilibriumOutcome solve_spne(const MarketParams& params,
                              const Stage1Options& options) {
  const Stage1Result stage1 = stage1_investment(params, options);

  StrategyProfile profile;
  profile.I_L = stage1.I_L;
  profile.I_F = stage2_investment(stage1.I_L, params.s);
  const PricePair prices = stage3_prices(profile.I_L, profile.I_F, params.c);
  profile.p_L = prices.p_L;
  profile.p_F = prices.p_F;

  EquilibriumOutcome out;
  out.regime = stage1.regime;
  out.profile = profile;
  out.split = stage4_split(profile);
  out.payoffs = PayoffPair{payoff_leader(profile, out.split, params),
                           payoff_follower(profile, out.split, params)};
  out.foc_residual = stage1.foc_residual;
  out.search_cap_hit = stage1.search_cap_hit;
  out.candidates = stage1.candidates;
  if (stage1.search_cap_hit) out.warnings.push_back("search_cap_hit");
  return out;
}

Regime classify_regime(const MarketParams& params,
                       const Stage1Options& options) {
  return stage1_investment(params, options).regime;
}

}  // namespace mvno
