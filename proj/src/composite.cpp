#include "ipd/composite.hpp"

#include <cmath>
#include <memory>

#include "ipd/iso.hpp"

namespace ipd {

double RunningStats::Std() const { return std::sqrt(Variance()); }

bool SwitchCondition(const RunningStats& stats_c, double u_a, const PayoffParams& payoffs) {
  if (stats_c.n() < kMinSamplesForSwitch) return false;
  const double gain = u_a - stats_c.mean();
  const double noise_floor =
      kSignificanceZ * stats_c.Std() / std::sqrt(static_cast<double>(stats_c.n()));
  return gain > noise_floor && gain > kMinGainFraction * (payoffs.r() - payoffs.p());
}

bool Revert1Condition(const RunningStats& stats_c, const RunningStats& stats_a) {
  if (stats_a.n() < kMinSamplesForSwitch || stats_c.n() == 0) return false;
  const double diff = stats_c.mean() - stats_a.mean();
  const double se = std::sqrt(stats_c.Variance() / static_cast<double>(stats_c.n()) +
                              stats_a.Variance() / static_cast<double>(stats_a.n()));
  if (se == 0.0) return diff > 0.0;
  return diff / se > kSignificanceZ;
}

bool Revert2Condition(const RunningStats& stats_o, const PayoffParams& payoffs) {
  if (stats_o.n() < kMinSamplesForSwitch) return false;
  return stats_o.mean() -
             kSignificanceZ * stats_o.Std() / std::sqrt(static_cast<double>(stats_o.n())) >
         payoffs.r();
}

CompositeStrategy::CompositeStrategy(const GameContext& ctx, CompositeOptions options)
    : ctx_(ctx), options_(options), model_(ModelInit(ctx.p_noise)) {}

void CompositeStrategy::Absorb(std::span<const Move> history) {
  for (std::size_t t = seen_; t < history.size(); ++t) {
    const Move& now = history[t];
    const Phase played_in = t < phase_log_.size() ? phase_log_[t] : Phase::kLongtermTft;
    if (t > 0) {
      const Move& prev = history[t - 1];
      model_ = ModelUpdate(model_, prev.State(), now.opp, ctx_.p_noise);
      if (!(options_.freeze_counters_in_iso && played_in == Phase::kIso)) {
        counters_ = UpdateCounters(counters_, prev.own, now.opp);
      }
    }
    const auto [own_payoff, opp_payoff] = Payoff(now.own, now.opp, ctx_.payoffs);
    if (played_in == Phase::kLongtermTft) {
      stats_c_.Add(own_payoff);
    } else {
      stats_a_.Add(own_payoff);
      stats_o_.Add(opp_payoff);
    }
  }
  seen_ = history.size();
}

void CompositeStrategy::Transition(Phase to, const char* rule, std::size_t round,
                                   double u_a) {
  if (trace_) {
    trace_({{"round", round},
            {"event", to == Phase::kIso ? "switch" : "revert"},
            {"rule", rule},
            {"from", phase_ == Phase::kIso ? "iso" : "longterm-tft"},
            {"to", to == Phase::kIso ? "iso" : "longterm-tft"},
            {"u_a", u_a},
            {"n_c", stats_c_.n()},
            {"mean_c", stats_c_.mean()},
            {"std_c", stats_c_.Std()},
            {"n_a", stats_a_.n()},
            {"mean_a", stats_a_.mean()},
            {"std_a", stats_a_.Std()},
            {"mean_o", stats_o_.mean()},
            {"std_o", stats_o_.Std()}});
  }
  if (to == Phase::kLongtermTft) {
    closed_iso_rounds_ += stats_a_.n();
    ++reverts_;
    stats_a_.Reset();
    stats_o_.Reset();
  }
  phase_ = to;
}

Action CompositeStrategy::Decide(std::span<const Move> history, Rng& rng) {
  Absorb(history);
  const std::size_t round = history.size() + 1;
  Action action = C;
  if (history.empty()) {
    action = C;
  } else {
    const JointState state = history.back().State();
    const auto optimize = [&] {
      return OptimizePolicy(model_.coop_rate, state, options_.gamma_future, ctx_.payoffs,
                            ctx_.p_noise, options_.adam);
    };
    const auto sample = [&](const PolicyResult& policy) {
      return rng.Uniform() < policy.policy.p[state.Index()] ? C : D;
    };
    if (phase_ == Phase::kIso) {
      if (options_.revert.on_loss && Revert1Condition(stats_c_, stats_a_)) {
        Transition(Phase::kLongtermTft, "loss", round, 0.0);
      } else if (options_.revert.on_extortion && Revert2Condition(stats_o_, ctx_.payoffs)) {
        Transition(Phase::kLongtermTft, "extortion", round, 0.0);
      }
      if (phase_ == Phase::kIso) {
        const PolicyResult policy = optimize();
        action = sample(policy);
        if (trace_ && options_.trace_decisions) {
          trace_({{"round", round},
                  {"state", state.Name()},
                  {"model", ModelToJson(model_)},
                  {"policy", policy.policy.p},
                  {"u_a", policy.value},
                  {"action", std::string(1, ToChar(action))}});
        }
      } else {
        action = LongtermTftDecide(counters_, history, ctx_.p_noise);
      }
    } else if (reverts_ > 0 && !options_.rearm_after_revert) {
      action = LongtermTftDecide(counters_, history, ctx_.p_noise);
    } else {
      const PolicyResult policy = optimize();
      if (SwitchCondition(stats_c_, policy.value, ctx_.payoffs)) {
        Transition(Phase::kIso, "gain", round, policy.value);
        action = sample(policy);
      } else {
        action = LongtermTftDecide(counters_, history, ctx_.p_noise);
      }
    }
  }
  phase_log_.push_back(phase_);
  return action;
}

StrategySpec CompositeSpec(std::string name, CompositeOptions options) {
  return {std::move(name), [options](const GameContext& ctx) {
            return std::make_unique<CompositeStrategy>(ctx, options);
          }};
}

StrategySpec CooperateIso() { return CompositeSpec("cooperate-iso", {}); }

StrategySpec CooperateIsoRevert1() {
  CompositeOptions options;
  options.revert.on_loss = true;
  return CompositeSpec("cooperate-iso-revert1", options);
}

StrategySpec CooperateIsoRevert2() {
  CompositeOptions options;
  options.revert = {true, true};
  return CompositeSpec("cooperate-iso-revert2", options);
}

}  // namespace ipd
