#pragma once

#include <string>
#include <vector>

#include "mvno/market.hpp"

namespace mvno {

/// Equilibrium regime of the four-stage game.
///
/// OutcomeA: the leader's equilibrium investment strictly exceeds the
/// floor sqrt(2 / (9 s)) and is an interior stationary point of the
/// stage-1 continuation payoff. The follower then reserves only part of
/// the available resources.
///
/// OutcomeB: the leader invests exactly at the floor and the follower
/// reserves everything (I_F = I_L). Prices, split and the follower
/// payoff collapse to constants: p_L = c + 1/3, p_F = c + 2/3,
/// n_L = 1/3, pi_F = 2/9, pi_L = 1/3 - 2 gamma / (9 s).
enum class Regime { OutcomeA, OutcomeB };

/// Smallest investment the leader ever chooses: sqrt(2 / (9 s)).
/// Also the junction between the two branches of the follower's
/// best response.
double investment_floor(double s);

struct PricePair {
  double p_L = 0.0;
  double p_F = 0.0;
};

/// One entry of the stage-1 candidate comparison. `payoff` is the
/// stage-1 objective (the full continuation payoff) evaluated at I_L.
struct Stage1Candidate {
  enum class Source { Boundary, InteriorRoot };
  double I_L = 0.0;
  double payoff = 0.0;
  Source source = Source::Boundary;
};

/// Solver switches.
///
/// literal_foc selects the uncorrected closed-form lease term
/// s * I_L / (9 s I_L^2 - 1) inside the stage-1 objective instead of the
/// lease revenue s * I_F^2 implied by substituting the follower's best
/// response. The literal variant is discontinuous at the branch junction
/// and is offered for comparison runs only (CLI --paper-literal-foc);
/// every oracle certifies the corrected default.
struct Stage1Options {
  bool literal_foc = false;
};

struct Stage1Result {
  double I_L = 0.0;
  Regime regime = Regime::OutcomeB;
  double foc_residual = 0.0;   ///< |d pi_L / d I_L| at the winner if OutcomeA, else 0
  bool search_cap_hit = false; ///< objective still rising at the search cap
  std::vector<Stage1Candidate> candidates;  ///< boundary first, then interior roots
};

struct EquilibriumOutcome {
  Regime regime = Regime::OutcomeB;
  StrategyProfile profile;
  MarketSplit split;
  PayoffPair payoffs;
  double foc_residual = 0.0;
  bool search_cap_hit = false;
  std::vector<Stage1Candidate> candidates;
  std::vector<std::string> warnings;
};

/// Stage 4: subscribers sort themselves given the full profile.
/// x_n = (I_L - I_F) / I_L + p_F - p_L, n_L = clamp(x_n, 0, 1).
MarketSplit stage4_split(const StrategyProfile& profile);

/// Stage 3: the unique simultaneous price equilibrium with both
/// providers active, p_F = c + (I_L + I_F) / (3 I_L) and
/// p_L = c + (2 I_L - I_F) / (3 I_L). The implied split is interior for
/// every admissible investment pair.
PricePair stage3_prices(double I_L, double I_F, double c);

/// Stage 2: the follower's best reservation given I_L.
/// Returns I_L / (9 s I_L^2 - 1) above the floor and I_L at or below it
/// (the tie at the junction resolves to full reservation).
double stage2_investment(double I_L, double s);

/// Stage 1 objective: the leader's payoff after stages 2-4 play out.
///
/// For I_L <= investment_floor(s) the follower mirrors the leader and
/// the payoff is 1/9 + (s - gamma) * I_L^2. Above the floor the
/// follower's interior response is substituted, giving
///   ((2 - u)^2) / 9 + s * (I_L u)^2 - gamma * I_L^2,  u = 1 / (9 s I_L^2 - 1),
/// (or the literal lease term under options.literal_foc). The two
/// branches agree at the junction in the corrected form.
double stage1_objective(double I_L, const MarketParams& params,
                        const Stage1Options& options = {});

/// Stage 1: picks the leader's investment by comparing the floor
/// candidate against every stationary point of the objective on
/// (floor, cap].
///
/// Stationary points are located by scanning 2,000 log-spaced points with
/// a central finite-difference derivative (step 1e-6 * max(1, I_L)) and
/// refining each sign change by bisection to width 1e-10. The search cap
/// is 10 * max(floor, 1 / sqrt(max(gamma, 1e-6))); if the objective is
/// still rising at the cap the result carries search_cap_hit. The winner
/// is the payoff argmax; ties within 1e-12 resolve to the floor (the
/// smaller investment), which also pins the knife-edge parameter ray
/// gamma / s = 1/8 to OutcomeB.
Stage1Result stage1_investment(const MarketParams& params,
                               const Stage1Options& options = {});

/// Backward induction through all four stages.
EquilibriumOutcome solve_spne(const MarketParams& params,
                              const Stage1Options& options = {});

/// Regime of solve_spne without computing prices, split or payoffs.
Regime classify_regime(const MarketParams& params,
                       const Stage1Options& options = {});

}  // namespace mvno
