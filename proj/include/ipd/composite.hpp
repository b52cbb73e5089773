#ifndef IPD_COMPOSITE_HPP_
#define IPD_COMPOSITE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ipd/longterm_tft.hpp"
#include "ipd/markov.hpp"
#include "ipd/strategy.hpp"

namespace ipd {

// One-pass (Welford) mean and population standard deviation.
class RunningStats {
 public:
  void Add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }
  void Reset() { *this = RunningStats(); }

  long n() const { return n_; }
  double mean() const { return mean_; }
  double m2() const { return m2_; }
  double Variance() const { return n_ > 0 ? m2_ / static_cast<double>(n_) : 0.0; }
  double Std() const;

 private:
  long n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

inline constexpr long kMinSamplesForSwitch = 10;
inline constexpr double kSignificanceZ = 2.0;
inline constexpr double kMinGainFraction = 0.05;

// Longterm TFT -> ISO: n_c >= 10, and the promised gain u_a - U_c exceeds both
// 2 sigma_c / sqrt(n_c) and 0.05 (R - P).
bool SwitchCondition(const RunningStats& stats_c, double u_a, const PayoffParams& payoffs);

// ISO -> Longterm TFT on significant underperformance (two-sample z > 2).
bool Revert1Condition(const RunningStats& stats_c, const RunningStats& stats_a);

// ISO -> Longterm TFT when the opponent is significantly above R.
bool Revert2Condition(const RunningStats& stats_o, const PayoffParams& payoffs);

enum class Phase : std::uint8_t { kLongtermTft, kIso };

struct RevertRules {
  bool on_loss = false;
  bool on_extortion = false;
};

struct CompositeOptions {
  RevertRules revert;
  // Stop updating the forgiveness counters with rounds played under ISO.
  bool freeze_counters_in_iso = false;
  // Allow the switch rule to fire again after a revert. Off: once reverted,
  // the strategy plays Longterm TFT for the rest of the match.
  bool rearm_after_revert = false;
  double gamma_future = kGammaFuture;
  AdamConfig adam;
  // Also trace every ISO-phase decision (model, policy, u_a).
  bool trace_decisions = false;
};

// CooperateISO and its revert variants: starts in Longterm TFT, switches to
// ISO when the opponent model promises a significant gain, and returns to
// Longterm TFT when an enabled revert rule fires.
class CompositeStrategy : public Strategy {
 public:
  CompositeStrategy(const GameContext& ctx, CompositeOptions options);

  Action Decide(std::span<const Move> history, Rng& rng) override;
  void SetTrace(TraceFn trace) override { trace_ = std::move(trace); }

  Phase phase() const { return phase_; }
  const RunningStats& stats_c() const { return stats_c_; }
  const RunningStats& stats_a() const { return stats_a_; }
  const RunningStats& stats_o() const { return stats_o_; }
  const OpponentModel& model() const { return model_; }
  const ForgivenessCounters& counters() const { return counters_; }
  // Phase in which each past round was played.
  const std::vector<Phase>& phase_log() const { return phase_log_; }
  long closed_iso_rounds() const { return closed_iso_rounds_; }
  int reverts() const { return reverts_; }

 private:
  void Absorb(std::span<const Move> history);
  void Transition(Phase to, const char* rule, std::size_t round, double u_a);

  GameContext ctx_;
  CompositeOptions options_;
  Phase phase_ = Phase::kLongtermTft;
  RunningStats stats_c_;
  RunningStats stats_a_;
  RunningStats stats_o_;
  OpponentModel model_;
  ForgivenessCounters counters_;
  std::vector<Phase> phase_log_;
  long closed_iso_rounds_ = 0;
  std::size_t seen_ = 0;
  int reverts_ = 0;
  TraceFn trace_;
};

StrategySpec CooperateIso();
StrategySpec CooperateIsoRevert1();
StrategySpec CooperateIsoRevert2();
StrategySpec CompositeSpec(std::string name, CompositeOptions options);

}  // namespace ipd

#endif  // IPD_COMPOSITE_HPP_
