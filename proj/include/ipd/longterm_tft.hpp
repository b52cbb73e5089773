#ifndef IPD_LONGTERM_TFT_HPP_
#define IPD_LONGTERM_TFT_HPP_

#include <span>

#include "ipd/game.hpp"
#include "ipd/strategy.hpp"

namespace ipd {

// n_c: own actual cooperations, excluding the latest round (the opponent has
// not answered it yet). n_cd: opponent defections answering one of those.
struct ForgivenessCounters {
  long n_c = 0;
  long n_cd = 0;

  bool operator==(const ForgivenessCounters&) const = default;
};

// Pairs the opponent's action in round t with our own action in round t-1.
ForgivenessCounters UpdateCounters(ForgivenessCounters counters,
                                   Action own_actual_prev, Action opp_actual_now);

// (n_cd - p n_c) / max(1, sqrt(p (1 - p) n_c)): how many standard deviations
// the opponent's unprovoked defections lie above what noise explains.
double ZStat(const ForgivenessCounters& counters, double p_noise);

inline constexpr long kMinCooperationsToForgive = 5;
inline constexpr double kForgiveZThreshold = 2.0;

// Unconditional cooperation while n_c >= 5 and z < 2; otherwise TFT on the
// opponent's last actual action (cooperate on the first round).
Action LongtermTftDecide(const ForgivenessCounters& counters,
                         std::span<const Move> history, double p_noise);

// Folds rounds [from, history.size()) into `counters`.
void AdvanceCounters(ForgivenessCounters& counters, std::span<const Move> history,
                     std::size_t from);

class LongtermTft : public Strategy {
 public:
  explicit LongtermTft(double p_noise);
  Action Decide(std::span<const Move> history, Rng& rng) override;
  const ForgivenessCounters& counters() const { return counters_; }

 private:
  double p_noise_;
  ForgivenessCounters counters_;
  std::size_t seen_ = 0;
};

StrategySpec LongtermTftSpec();

}  // namespace ipd

#endif  // IPD_LONGTERM_TFT_HPP_
