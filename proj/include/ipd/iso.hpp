#ifndef IPD_ISO_HPP_
#define IPD_ISO_HPP_

#include <span>

#include "ipd/markov.hpp"
#include "ipd/strategy.hpp"

namespace ipd {

struct IsoChoice {
  Action action = C;
  PolicyResult policy;
};

// Optimizes against the model from `current_state` and samples the action
// with one draw: cooperate with probability policy.p[current_state].
IsoChoice IsoDecide(const OpponentModel& model, JointState current_state, double gamma,
                    const PayoffParams& payoffs, double p_noise, Rng& rng,
                    const AdamConfig& adam = {});

// Folds rounds [from, history.size()) into the model: each opponent action is
// attributed to the joint state of the round before it.
void AdvanceModel(OpponentModel& model, std::span<const Move> history, std::size_t from,
                  double p_noise);

nlohmann::json ModelToJson(const OpponentModel& model);

// Infinite Sum Optimizer as a standalone strategy. Cooperates on round 1.
class Iso : public Strategy {
 public:
  explicit Iso(const GameContext& ctx, double gamma_future = kGammaFuture);
  Action Decide(std::span<const Move> history, Rng& rng) override;
  void SetTrace(TraceFn trace) override { trace_ = std::move(trace); }
  const OpponentModel& model() const { return model_; }

 private:
  GameContext ctx_;
  double gamma_future_;
  OpponentModel model_;
  std::size_t seen_ = 0;
  TraceFn trace_;
};

StrategySpec IsoSpec();

}  // namespace ipd

#endif  // IPD_ISO_HPP_
