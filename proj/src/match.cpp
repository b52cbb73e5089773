#include "ipd/match.hpp"

#include <cstdio>
#include <string>
#include <tuple>

namespace ipd {

Action ApplyNoise(Action intended, double p_noise, Rng& rng) {
  ValidateNoise(p_noise);
  return ApplyNoise(intended, p_noise, rng.Uniform());
}

MatchResult PlayMatch(Strategy& a, Strategy& b, const MatchConfig& config) {
  if (config.length < 1) throw ConfigError("match length must be >= 1");
  ValidateNoise(config.p_noise);

  Rng rng(config.seed);
  MatchResult result;
  result.seed = config.seed;
  result.rounds.reserve(config.length);
  std::vector<Move> view_a;
  std::vector<Move> view_b;
  view_a.reserve(config.length);
  view_b.reserve(config.length);

  double sum_a = 0.0;
  double sum_b = 0.0;
  for (int t = 0; t < config.length; ++t) {
    const double noise_u_a = rng.Uniform();
    const double noise_u_b = rng.Uniform();
    RoundRecord rec;
    rec.intended_a = a.Decide(view_a, rng);
    rec.intended_b = b.Decide(view_b, rng);
    rec.actual_a = ApplyNoise(rec.intended_a, config.p_noise, noise_u_a);
    rec.actual_b = ApplyNoise(rec.intended_b, config.p_noise, noise_u_b);
    std::tie(rec.payoff_a, rec.payoff_b) =
        Payoff(rec.actual_a, rec.actual_b, config.payoffs);
    sum_a += rec.payoff_a;
    sum_b += rec.payoff_b;
    view_a.push_back({rec.actual_a, rec.actual_b});
    view_b.push_back({rec.actual_b, rec.actual_a});
    result.rounds.push_back(rec);
  }
  result.avg_payoff_a = sum_a / config.length;
  result.avg_payoff_b = sum_b / config.length;
  return result;
}

MatchResult RunMatch(const StrategyFactory& a, const StrategyFactory& b,
                     const MatchConfig& config, TraceFn trace_a,
                     TraceFn trace_b) {
  ValidateNoise(config.p_noise);
  const GameContext ctx{config.payoffs, config.p_noise};
  StrategyPtr player_a = a(ctx);
  StrategyPtr player_b = b(ctx);
  if (trace_a) player_a->SetTrace(std::move(trace_a));
  if (trace_b) player_b->SetTrace(std::move(trace_b));
  return PlayMatch(*player_a, *player_b, config);
}

nlohmann::json ToJson(const MatchResult& result, bool include_rounds) {
  nlohmann::json j;
  j["seed"] = result.seed;
  j["length"] = result.rounds.size();
  j["avg_payoff_a"] = result.avg_payoff_a;
  j["avg_payoff_b"] = result.avg_payoff_b;
  if (include_rounds) {
    auto rounds = nlohmann::json::array();
    for (const auto& r : result.rounds) {
      rounds.push_back({{"intended_a", std::string(1, ToChar(r.intended_a))},
                        {"intended_b", std::string(1, ToChar(r.intended_b))},
                        {"actual_a", std::string(1, ToChar(r.actual_a))},
                        {"actual_b", std::string(1, ToChar(r.actual_b))},
                        {"payoff_a", r.payoff_a},
                        {"payoff_b", r.payoff_b}});
    }
    j["rounds"] = std::move(rounds);
  }
  return j;
}

void WriteRoundsCsv(const MatchResult& result, std::ostream& out) {
  out << "round,intended_a,intended_b,actual_a,actual_b,payoff_a,payoff_b\n";
  char buf[64];
  for (std::size_t i = 0; i < result.rounds.size(); ++i) {
    const auto& r = result.rounds[i];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g", r.payoff_a, r.payoff_b);
    out << i + 1 << ',' << ToChar(r.intended_a) << ',' << ToChar(r.intended_b)
        << ',' << ToChar(r.actual_a) << ',' << ToChar(r.actual_b) << ',' << buf
        << '\n';
  }
}

}  // namespace ipd
