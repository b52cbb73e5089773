#ifndef IPD_STRATEGY_HPP_
#define IPD_STRATEGY_HPP_

#include <functional>
#include <memory>
#include <span>
#include <string>

#include "ipd/game.hpp"
#include "ipd/rng.hpp"
#include "json.hpp"

namespace ipd {

// One completed round seen from one player: both ACTUAL actions.
struct Move {
  Action own;
  Action opp;

  JointState State() const { return {own, opp}; }
  bool operator==(const Move&) const = default;
};

// What every strategy is told before the first round.
struct GameContext {
  PayoffParams payoffs;
  double p_noise = 0.0;
};

using TraceFn = std::function<void(const nlohmann::json&)>;

// A stateful player confined to one match. Decide() is called once per round
// with the full visible history (actual actions, own perspective) and must
// return the intended action. Any randomness comes from `rng`.
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual Action Decide(std::span<const Move> history, Rng& rng) = 0;

  // Optional debug stream of JSON records; strategies without internal
  // state ignore it.
  virtual void SetTrace(TraceFn trace) { (void)trace; }
};

using StrategyPtr = std::unique_ptr<Strategy>;
using StrategyFactory = std::function<StrategyPtr(const GameContext&)>;

// Immutable, shareable recipe for fresh strategy instances.
struct StrategySpec {
  std::string name;
  StrategyFactory make;
};

}  // namespace ipd

#endif  // IPD_STRATEGY_HPP_
