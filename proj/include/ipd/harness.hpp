#ifndef IPD_HARNESS_HPP_
#define IPD_HARNESS_HPP_

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "ipd/game.hpp"
#include "ipd/strategy.hpp"
#include "ipd/zoo.hpp"
#include "json.hpp"

namespace ipd {

// Runs fn(0..n-1) on up to `threads` workers. Each index runs exactly once;
// callers write results by index so the outcome is order-independent.
void ParallelFor(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

// ---------------------------------------------------------------------------
// Tournaments

struct TournamentConfig {
  std::vector<std::string> pool;
  // Strategies whose scores are reported; empty means the whole pool.
  std::vector<std::string> evaluate;
  int length = 400;
  int repetitions = 5;
  std::vector<double> noise_levels{0.0, 0.01, 0.05, 0.10};
  PayoffParams payoffs;
  std::uint64_t master_seed = 1;
  int threads = 1;

  // Throws ConfigError on bad sizes, noise levels or unknown names (all
  // unknown names are listed in one message).
  void Validate() const;
};

struct OpponentScore {
  std::string opponent;
  double mean = 0.0;
  double std_error = 0.0;
};

struct TournamentEntry {
  std::string strategy;
  double noise = 0.0;
  double mean = 0.0;
  // sigma / sqrt(repetitions * length), sigma = sample std of the per-step
  // payoffs pooled over every match of this strategy at this noise level.
  double std_error = 0.0;
  int rank = 0;  // 1 = best within the noise level
  std::vector<OpponentScore> per_opponent;
};

struct TournamentReport {
  std::vector<TournamentEntry> entries;  // noise-major, evaluate order within

  const TournamentEntry* Find(const std::string& strategy, double noise) const;
};

TournamentReport RunTournament(const TournamentConfig& config);

nlohmann::json ToJson(const TournamentReport& report);
// Columns: strategy,noise,mean,stderr,rank
void WriteCsv(const TournamentReport& report, std::ostream& out);

// ---------------------------------------------------------------------------
// Self-play

// Closed-form per-step payoffs of two players who both intend the same
// action every round, under noise.
double NoisyMutualCooperationPayoff(const PayoffParams& payoffs, double p_noise);
double NoisyMutualDefectionPayoff(const PayoffParams& payoffs, double p_noise);
double RandomPlayPayoff(const PayoffParams& payoffs);

struct SelfPlayResult {
  std::string strategy;
  double p_noise = 0.0;
  int games = 0;
  std::vector<double> curve;  // per-round payoff, mean over games and both seats
  double mean = 0.0;
  double last_half_mean = 0.0;
  double bench_cooperate = 0.0;
  double bench_random = 0.0;
  double bench_defect = 0.0;
};

SelfPlayResult SelfPlay(const StrategySpec& strategy, double p_noise, int games, int length,
                        const PayoffParams& payoffs = {}, std::uint64_t master_seed = 1,
                        int threads = 1);

// Mean of curve[begin, end) in bins of `width` rounds.
std::vector<double> BinCurve(const std::vector<double>& curve, int width);

nlohmann::json ToJson(const SelfPlayResult& result);
// Columns: round,mean_payoff
void WriteCurveCsv(const SelfPlayResult& result, std::ostream& out);

// ---------------------------------------------------------------------------
// Desiderata audits. "Steady state" is the final half of `length`-round
// matches, averaged over `seeds` seeds.

struct AuditOptions {
  int length = 2000;
  int seeds = 20;
  // Pass/fail slack is tolerance + noise_slope * p_noise: the desiderata
  // allow R - O(p_noise), and noise costs even well-behaved strategies a few
  // multiples of p_noise per step.
  double tolerance = 0.1;
  double noise_slope = 3.0;
  // Probes within this much of the best probe payoff count as tied best
  // responses; the audit uses the one that is best for the strategy.
  double tie_tolerance = 0.03;
  PayoffParams payoffs;
  std::uint64_t master_seed = 1;
  int threads = 1;

  double Slack(double p_noise) const { return tolerance + noise_slope * p_noise; }
};

struct SelfCooperationAudit {
  std::string strategy;
  double p_noise = 0.0;
  double measured = 0.0;
  double benchmark = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

SelfCooperationAudit AuditSelfCooperating(const StrategySpec& strategy, double p_noise,
                                          const AuditOptions& options = {});

struct ProbeOutcome {
  std::string probe;
  double probe_payoff = 0.0;
  double strategy_payoff = 0.0;
};

struct CooperationInducingAudit {
  std::string strategy;
  double p_noise = 0.0;
  std::string best_probe;
  double best_probe_payoff = 0.0;
  double strategy_payoff_vs_best = 0.0;
  double lower_bound = 0.0;  // R - c p - slack, c = S + 2T - 3R
  double upper_bound = 0.0;  // R + c p + slack
  bool pass = false;
  std::vector<ProbeOutcome> probes;
};

// All 32 deterministic memory-1 strategies plus extortionate ZD strategies
// with chi in {1.5, 2, 3} at half their largest feasible phi.
std::vector<StrategySpec> DefaultProbeSet(const PayoffParams& payoffs = {});

CooperationInducingAudit AuditCooperationInducing(const StrategySpec& strategy, double p_noise,
                                                  const std::vector<StrategySpec>& probes,
                                                  const AuditOptions& options = {});

struct MemOneOpponent {
  std::string name;
  MemOneVector vector;
  bool extortionate = false;
};

// Fixed memory-1 opponents used for the adaptiveness audit.
std::vector<MemOneOpponent> DefaultMemOneOpponents(const PayoffParams& payoffs = {},
                                                   bool include_extortionate = true);

struct AdaptiveGap {
  std::string opponent;
  double achieved = 0.0;
  double optimum = 0.0;
  double gap = 0.0;
  bool extortionate = false;
  bool pass = false;
};

struct AdaptiveAudit {
  std::string strategy;
  double p_noise = 0.0;
  // Every non-extortionate gap is within the slack.
  bool pass = false;
  // Same, over every opponent including the extortionate ones.
  bool pass_all = false;
  std::vector<AdaptiveGap> gaps;
};

// Optimum per opponent is the corner-oracle value against the opponent's true
// vector with noise applied (gamma 0.99, starting from CC).
AdaptiveAudit AuditAdaptive(const StrategySpec& strategy,
                            const std::vector<MemOneOpponent>& opponents, double p_noise,
                            const AuditOptions& options = {});

nlohmann::json ToJson(const SelfCooperationAudit& audit);
nlohmann::json ToJson(const CooperationInducingAudit& audit);
nlohmann::json ToJson(const AdaptiveAudit& audit);

}  // namespace ipd

#endif  // IPD_HARNESS_HPP_
