#include "ipd/longterm_tft.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace ipd {

ForgivenessCounters UpdateCounters(ForgivenessCounters counters,
                                   Action own_actual_prev, Action opp_actual_now) {
  if (own_actual_prev == C) {
    ++counters.n_c;
    if (opp_actual_now == D) ++counters.n_cd;
  }
  return counters;
}

double ZStat(const ForgivenessCounters& counters, double p_noise) {
  const double n_c = static_cast<double>(counters.n_c);
  const double numerator = static_cast<double>(counters.n_cd) - p_noise * n_c;
  const double denominator =
      std::max(1.0, std::sqrt(p_noise * (1.0 - p_noise) * n_c));
  return numerator / denominator;
}

Action LongtermTftDecide(const ForgivenessCounters& counters,
                         std::span<const Move> history, double p_noise) {
  if (counters.n_c >= kMinCooperationsToForgive &&
      ZStat(counters, p_noise) < kForgiveZThreshold) {
    return C;
  }
  return history.empty() ? C : history.back().opp;
}

void AdvanceCounters(ForgivenessCounters& counters, std::span<const Move> history,
                     std::size_t from) {
  for (std::size_t t = std::max<std::size_t>(from, 1); t < history.size(); ++t) {
    counters = UpdateCounters(counters, history[t - 1].own, history[t].opp);
  }
}

LongtermTft::LongtermTft(double p_noise) : p_noise_(p_noise) { ValidateNoise(p_noise); }

Action LongtermTft::Decide(std::span<const Move> history, Rng&) {
  AdvanceCounters(counters_, history, seen_);
  seen_ = history.size();
  return LongtermTftDecide(counters_, history, p_noise_);
}

StrategySpec LongtermTftSpec() {
  return {"longterm-tft", [](const GameContext& ctx) {
            return std::make_unique<LongtermTft>(ctx.p_noise);
          }};
}

}  // namespace ipd
