#ifndef IPD_MATCH_HPP_
#define IPD_MATCH_HPP_

#include <cstdint>
#include <ostream>
#include <vector>

#include "ipd/game.hpp"
#include "ipd/rng.hpp"
#include "ipd/strategy.hpp"
#include "json.hpp"

namespace ipd {

// Flips `intended` with probability p_noise using one draw from `rng`.
// Throws ConfigError unless 0 <= p_noise <= 0.5.
Action ApplyNoise(Action intended, double p_noise, Rng& rng);

// Same rule with a pre-drawn uniform `u` in [0, 1): flip iff u < p_noise.
constexpr Action ApplyNoise(Action intended, double p_noise, double u) {
  return u < p_noise ? Flip(intended) : intended;
}

struct RoundRecord {
  Action intended_a = C;
  Action intended_b = C;
  Action actual_a = C;
  Action actual_b = C;
  double payoff_a = 0.0;
  double payoff_b = 0.0;

  bool operator==(const RoundRecord&) const = default;
};

struct MatchResult {
  std::vector<RoundRecord> rounds;
  double avg_payoff_a = 0.0;
  double avg_payoff_b = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const MatchResult&) const = default;
};

struct MatchConfig {
  int length = 400;
  double p_noise = 0.0;
  PayoffParams payoffs;
  std::uint64_t seed = 0;
};

// Plays already-constructed strategies against each other. Each round draws,
// in order: noise uniform for A, noise uniform for B, then whatever A's and
// B's Decide() consume. Both players then observe both actual actions.
MatchResult PlayMatch(Strategy& a, Strategy& b, const MatchConfig& config);

// Builds fresh instances (told p_noise and payoffs) and plays them.
MatchResult RunMatch(const StrategyFactory& a, const StrategyFactory& b,
                     const MatchConfig& config, TraceFn trace_a = {},
                     TraceFn trace_b = {});

nlohmann::json ToJson(const MatchResult& result, bool include_rounds = true);

// Round log: round,intended_a,intended_b,actual_a,actual_b,payoff_a,payoff_b
void WriteRoundsCsv(const MatchResult& result, std::ostream& out);

}  // namespace ipd

#endif  // IPD_MATCH_HPP_
