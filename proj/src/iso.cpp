#include "ipd/iso.hpp"

#include <algorithm>
#include <memory>

namespace ipd {

IsoChoice IsoDecide(const OpponentModel& model, JointState current_state, double gamma,
                    const PayoffParams& payoffs, double p_noise, Rng& rng,
                    const AdamConfig& adam) {
  IsoChoice choice;
  choice.policy = OptimizePolicy(model.coop_rate, current_state, gamma, payoffs, p_noise, adam);
  const double coop = choice.policy.policy.p[current_state.Index()];
  choice.action = rng.Uniform() < coop ? C : D;
  return choice;
}

void AdvanceModel(OpponentModel& model, std::span<const Move> history, std::size_t from,
                  double p_noise) {
  for (std::size_t t = std::max<std::size_t>(from, 1); t < history.size(); ++t) {
    model = ModelUpdate(model, history[t - 1].State(), history[t].opp, p_noise);
  }
}

nlohmann::json ModelToJson(const OpponentModel& model) {
  return {{"coop_rate", model.coop_rate}, {"weight", model.weight}};
}

Iso::Iso(const GameContext& ctx, double gamma_future)
    : ctx_(ctx), gamma_future_(gamma_future), model_(ModelInit(ctx.p_noise)) {}

Action Iso::Decide(std::span<const Move> history, Rng& rng) {
  AdvanceModel(model_, history, seen_, ctx_.p_noise);
  seen_ = history.size();
  if (history.empty()) return C;
  const JointState state = history.back().State();
  const IsoChoice choice =
      IsoDecide(model_, state, gamma_future_, ctx_.payoffs, ctx_.p_noise, rng);
  if (trace_) {
    trace_({{"round", history.size() + 1},
            {"state", state.Name()},
            {"model", ModelToJson(model_)},
            {"policy", choice.policy.policy.p},
            {"u_a", choice.policy.value},
            {"action", std::string(1, ToChar(choice.action))}});
  }
  return choice.action;
}

StrategySpec IsoSpec() {
  return {"iso", [](const GameContext& ctx) { return std::make_unique<Iso>(ctx); }};
}

}  // namespace ipd
