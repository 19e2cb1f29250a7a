#include "mvno/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace mvno {

void validate_grid(const GridSpec& grid) {
  if (!(grid.step > 0.0) || !(grid.lo < grid.hi))
    fail(Errc::BadGrid, "grid needs lo < hi and a positive step");
  if ((grid.hi - grid.lo) / grid.step > 1e7)
    fail(Errc::BadGrid, "grid would exceed 1e7 points");
}

namespace {

// Lattice lo, lo + step, ... plus the exact upper endpoint: corner
// argmaxes live at hi, and a lattice that stops short of it would not
// cover the closed interval.
std::vector<double> grid_points(const GridSpec& grid) {
  validate_grid(grid);
  const auto count =
      static_cast<long>(std::floor((grid.hi - grid.lo) / grid.step + 1e-9));
  std::vector<double> pts;
  pts.reserve(count + 2);
  for (long k = 0; k <= count; ++k) pts.push_back(grid.lo + k * grid.step);
  if (pts.back() < grid.hi) pts.push_back(grid.hi);
  return pts;
}

// Price-stage subgame with fixed transports. Investment and lease terms
// are constants at this stage and drop out of every comparison.
struct PriceGame {
  double t_L;
  double t_F;
  double c;

  double share_L(double p_L, double p_F) const {
    return std::clamp((t_F + p_F - p_L) / (t_L + t_F), 0.0, 1.0);
  }
  double payoff_L(double p_L, double p_F) const {
    return share_L(p_L, p_F) * (p_L - c);
  }
  double payoff_F(double p_L, double p_F) const {
    return (1.0 - share_L(p_L, p_F)) * (p_F - c);
  }
};

// Grid argmax; ties keep the lowest price so the iteration is
// deterministic.
int best_response_L(const PriceGame& game, const std::vector<double>& pts,
                    double p_F) {
  int best = 0;
  double best_pay = game.payoff_L(pts[0], p_F);
  for (int j = 1; j < static_cast<int>(pts.size()); ++j) {
    const double pay = game.payoff_L(pts[j], p_F);
    if (pay > best_pay) {
      best_pay = pay;
      best = j;
    }
  }
  return best;
}

int best_response_F(const PriceGame& game, const std::vector<double>& pts,
                    double p_L) {
  int best = 0;
  double best_pay = game.payoff_F(p_L, pts[0]);
  for (int j = 1; j < static_cast<int>(pts.size()); ++j) {
    const double pay = game.payoff_F(p_L, pts[j]);
    if (pay > best_pay) {
      best_pay = pay;
      best = j;
    }
  }
  return best;
}

constexpr int kMaxRounds = 10000;

// Simultaneous best-response iteration. Grid rounding can trap the
// simultaneous map in a two-cycle; when the state repeats with period
// two we finish with sequential updates, whose fixed points satisfy the
// same simultaneous condition p_L = BR_L(p_F), p_F = BR_F(p_L).
std::pair<int, int> fixed_point(const PriceGame& game,
                                const std::vector<double>& pts, int iL,
                                int iF) {
  int prevL = -1, prevF = -1;
  for (int round = 0; round < kMaxRounds; ++round) {
    const int nextL = best_response_L(game, pts, pts[iF]);
    const int nextF = best_response_F(game, pts, pts[iL]);
    if (nextL == iL && nextF == iF) return {iL, iF};
    if (nextL == prevL && nextF == prevF) break;  // period-2 cycle
    prevL = iL;
    prevF = iF;
    iL = nextL;
    iF = nextF;
  }
  for (int round = 0; round < kMaxRounds; ++round) {
    const int nextL = best_response_L(game, pts, pts[iF]);
    const int nextF = best_response_F(game, pts, pts[nextL]);
    if (nextL == iL && nextF == iF) return {iL, iF};
    iL = nextL;
    iF = nextF;
  }
  fail(Errc::NoConvergence, "price best-response iteration did not settle");
}

// Checks that no grid deviation (corner prices included) raises either
// payoff at the candidate point.
bool is_grid_equilibrium(const PriceGame& game, const std::vector<double>& pts,
                         int iL, int iF) {
  const double pay_L = game.payoff_L(pts[iL], pts[iF]);
  const double pay_F = game.payoff_F(pts[iL], pts[iF]);
  for (double p : pts) {
    if (game.payoff_L(p, pts[iF]) > pay_L) return false;
    if (game.payoff_F(pts[iL], p) > pay_F) return false;
  }
  return true;
}

OracleReport price_oracle_core(std::string target, const PriceGame& game,
                               double analytic_p_L, double analytic_p_F,
                               const GridSpec& grid) {
  const std::vector<double> pts = grid_points(grid);
  const int last = static_cast<int>(pts.size()) - 1;
  const int mid = last / 2;

  std::vector<std::pair<int, int>> found;
  for (auto [sL, sF] : {std::pair{0, 0}, std::pair{last, last},
                        std::pair{mid, mid}}) {
    const auto fp = fixed_point(game, pts, sL, sF);
    if (std::find(found.begin(), found.end(), fp) == found.end())
      found.push_back(fp);
  }

  OracleReport report;
  report.target = std::move(target);
  report.analytic_value = {analytic_p_L, analytic_p_F};
  report.tolerance = 2.0 * grid.step;
  bool certified = true;
  double gap = 0.0;
  for (auto [iL, iF] : found) {
    report.oracle_value.push_back(pts[iL]);
    report.oracle_value.push_back(pts[iF]);
    gap = std::max(gap, std::fabs(pts[iL] - analytic_p_L));
    gap = std::max(gap, std::fabs(pts[iF] - analytic_p_F));
    certified = certified && is_grid_equilibrium(game, pts, iL, iF);
  }
  report.max_abs_gap = gap;
  report.passed = certified && gap <= report.tolerance;
  return report;
}

}  // namespace

OracleReport price_best_response_oracle(double I_L, double I_F, double c,
                                        const GridSpec& grid) {
  const TransportCosts t = transport_costs(I_L, I_F);
  const PricePair analytic = stage3_prices(I_L, I_F, c);
  return price_oracle_core("price_best_response_oracle",
                           PriceGame{t.t_L, t.t_F, c}, analytic.p_L,
                           analytic.p_F, grid);
}

OracleReport benchmark_price_oracle(const BenchmarkParams& params,
                                    const GridSpec& grid) {
  const BenchmarkOutcome analytic = benchmark_equilibrium(params);
  return price_oracle_core("benchmark_price_oracle",
                           PriceGame{params.t_L, params.t_F, params.c},
                           analytic.p_L, analytic.p_F, grid);
}

OracleReport follower_investment_oracle(double I_L, double s, double c,
                                        const GridSpec& grid) {
  validate_investments(I_L, I_L);
  if (!(s > 0.0)) fail(Errc::NonPositiveFee, "fee must be positive");

  // Follower's continuation payoff after the price stage. The implied
  // split is interior (x_n between 1/3 and 2/3) for every reservation in
  // [0, I_L], so the clamp never binds and c cancels out of the margin.
  const auto continuation = [&](double I_F) {
    const double share = I_F / I_L;
    const double margin_F = (1.0 + share) / 3.0;
    return margin_F * margin_F - s * I_F * I_F;
  };

  double best_I = 0.0;
  double best_pay = continuation(0.0);
  for (double I_F : grid_points(grid)) {
    if (I_F > I_L || I_F < 0.0) continue;
    const double pay = continuation(I_F);
    if (pay >= best_pay) {  // ties prefer the larger reservation
      best_pay = pay;
      best_I = I_F;
    }
  }

  const double analytic_I = stage2_investment(I_L, s);
  const double analytic_pay = continuation(analytic_I);

  OracleReport report;
  report.target = "follower_investment_oracle";
  report.analytic_value = {analytic_I, analytic_pay};
  report.oracle_value = {best_I, best_pay};
  report.tolerance = 2.0 * grid.step;
  report.max_abs_gap = std::max(std::fabs(best_I - analytic_I),
                                std::fabs(best_pay - analytic_pay));
  report.passed = report.max_abs_gap <= report.tolerance;
  (void)c;  // cancels out of the stage-3 margins by construction
  return report;
}

OracleReport leader_investment_oracle(const MarketParams& params,
                                      const GridSpec& grid,
                                      const Stage1Options& options) {
  // Composed continuation payoff: each candidate investment runs the
  // follower response, the price stage and the split. No closed form of
  // the stage-1 objective appears on this path.
  const auto continuation = [&](double I_L) {
    const double I_F = stage2_investment(I_L, params.s);
    const double share = I_F / I_L;
    const double margin_L = (2.0 - share) / 3.0;  // equals n_L, interior
    return margin_L * margin_L + params.s * I_F * I_F -
           params.gamma * I_L * I_L;
  };

  std::vector<double> pts = grid_points(grid);
  // The objective is kinked at the branch junction; a uniform lattice
  // straddles it, so evaluate the junction explicitly.
  const double junction = investment_floor(params.s);
  if (junction > 0.0 && junction <= grid.hi) pts.push_back(junction);

  bool seen = false;
  double best_I = 0.0, best_pay = 0.0;
  for (double I_L : pts) {
    if (!(I_L > 0.0)) continue;
    const double pay = continuation(I_L);
    if (!seen || pay > best_pay) {
      seen = true;
      best_pay = pay;
      best_I = I_L;
    }
  }
  if (!seen) fail(Errc::BadGrid, "no positive investment on the grid");

  const Stage1Result stage1 = stage1_investment(params, options);
  const double reported = stage1_objective(stage1.I_L, params, options);

  OracleReport report;
  report.target = "leader_investment_oracle";
  report.analytic_value = {stage1.I_L, reported};
  report.oracle_value = {best_I, best_pay};
  report.tolerance = 1e-6;
  // Values, not argmax locations: the s = gamma plateau leaves the argmax
  // ill-conditioned while the achieved payoff stays pinned.
  report.max_abs_gap = std::fabs(best_pay - reported);
  report.passed = report.max_abs_gap <= report.tolerance;
  return report;
}

MarketSplit hotelling_agent_oracle(const StrategyProfile& profile,
                                   const MarketParams& params,
                                   std::int64_t N) {
  if (N < 10) fail(Errc::BadGrid, "need at least 10 agents");
  const TransportCosts t = transport_costs(profile.I_L, profile.I_F);

  std::int64_t with_leader = 0;
  for (std::int64_t i = 0; i < N; ++i) {
    const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(N);
    const double u_L = params.v_star - t.t_L * x - profile.p_L;
    const double u_F = params.v_star - t.t_F * (1.0 - x) - profile.p_F;
    if (std::max(u_L, u_F) < 0.0)
      fail(Errc::CoverageViolated,
           "an agent is priced out of the market; raise v_star");
    if (u_L >= u_F) ++with_leader;  // ties join the leader
  }

  const double n_L =
      static_cast<double>(with_leader) / static_cast<double>(N);
  return MarketSplit{n_L, n_L, 1.0 - n_L};
}

}  // namespace mvno
