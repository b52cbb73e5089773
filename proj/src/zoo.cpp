#include "ipd/zoo.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <string>

namespace ipd {
namespace {

std::string FormatDouble(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

bool IsProbability(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

MemOneVector::MemOneVector(std::array<double, 4> probs, double first)
    : p(probs), first_move_coop(first) {
  for (double x : p) {
    if (!IsProbability(x)) {
      throw ConfigError("memory-1 probability out of [0, 1]: " + FormatDouble(x));
    }
  }
  if (!IsProbability(first)) {
    throw ConfigError("first-move probability out of [0, 1]: " + FormatDouble(first));
  }
}

std::array<double, 4> MemOneVector::AsSeenByOpponent() const {
  return {p[0], p[MirrorIndex(1)], p[MirrorIndex(2)], p[3]};
}

Action MemOneStep(const MemOneVector& v, std::optional<JointState> state, Rng& rng) {
  const double coop = state ? v.p[state->Index()] : v.first_move_coop;
  return rng.Uniform() < coop ? C : D;
}

MemOneVector ZdExtortion(double chi, double phi, const PayoffParams& payoffs) {
  if (!(chi >= 1.0)) throw ConfigError("zd: chi must be >= 1, got " + FormatDouble(chi));
  if (!(phi > 0.0)) throw ConfigError("zd: phi must be > 0, got " + FormatDouble(phi));
  const double r = payoffs.r(), s = payoffs.s(), t = payoffs.t(), p = payoffs.p();
  const double p_cc = 1.0 - phi * (chi - 1.0) * (r - p);
  const double p_cd = 1.0 + phi * ((s - p) - chi * (t - p));
  const double p_dc = phi * ((t - p) - chi * (s - p));
  if (p_cc < 0.0) {
    throw ConfigError("zd: p_CC = " + FormatDouble(p_cc) + " < 0; reduce phi");
  }
  if (p_cd < 0.0) {
    throw ConfigError("zd: p_CD = " + FormatDouble(p_cd) + " < 0; reduce phi");
  }
  if (p_dc > 1.0) {
    throw ConfigError("zd: p_DC = " + FormatDouble(p_dc) + " > 1; reduce phi");
  }
  return MemOneVector({p_cc, p_cd, p_dc, 0.0}, 0.0);
}

double ZdMaxPhi(double chi, const PayoffParams& payoffs) {
  const double r = payoffs.r(), s = payoffs.s(), t = payoffs.t(), p = payoffs.p();
  double bound = 1.0 / ((p - s) + chi * (t - p));
  bound = std::min(bound, 1.0 / ((t - p) - chi * (s - p)));
  if (chi > 1.0) bound = std::min(bound, 1.0 / ((chi - 1.0) * (r - p)));
  return bound;
}

double GenerousTftBound(const PayoffParams& payoffs) {
  const double r = payoffs.r(), s = payoffs.s(), t = payoffs.t(), p = payoffs.p();
  return std::min(1.0 - (t - r) / (r - s), (r - p) / (t - p));
}

double GenerousTftProbability(const PayoffParams& payoffs) {
  return kGenerosityShare * std::max(0.0, GenerousTftBound(payoffs));
}

MemOneVector TftVector() { return MemOneVector({1, 0, 1, 0}, 1); }
MemOneVector PavlovVector() { return MemOneVector({1, 0, 0, 1}, 1); }
MemOneVector GenerousTftVector(const PayoffParams& payoffs) {
  return GenerousTftVector(GenerousTftProbability(payoffs));
}

MemOneVector GenerousTftVector(double generosity) {
  return MemOneVector({1, generosity, 1, generosity}, 1);
}

Action MemOneStrategy::Decide(std::span<const Move> history, Rng& rng) {
  if (history.empty()) return MemOneStep(v_, std::nullopt, rng);
  return MemOneStep(v_, history.back().State(), rng);
}

Action RandomStrategy::Decide(std::span<const Move>, Rng& rng) {
  return rng.Uniform() < q_ ? C : D;
}

Action TitForTwoTats::Decide(std::span<const Move> history, Rng&) {
  const std::size_t n = history.size();
  if (n >= 2 && history[n - 1].opp == D && history[n - 2].opp == D) return D;
  return C;
}

Action GrimTrigger::Decide(std::span<const Move> history, Rng&) {
  for (; seen_ < history.size(); ++seen_) {
    if (history[seen_].opp == D) triggered_ = true;
  }
  return triggered_ ? D : C;
}

Action ContriteTft::Decide(std::span<const Move> history, Rng&) {
  for (; seen_ < history.size(); ++seen_) {
    const Move& m = history[seen_];
    const bool own_good = m.own == C || !opp_good_;
    const bool opp_good = m.opp == C || !own_good_;
    own_good_ = own_good;
    opp_good_ = opp_good;
  }
  return (!opp_good_ && own_good_) ? D : C;
}

StrategySpec MemOne(const MemOneVector& v) {
  std::string name = "memone:";
  for (int i = 0; i < 4; ++i) name += (i ? "," : "") + FormatDouble(v.p[i]);
  name += ";first=" + FormatDouble(v.first_move_coop);
  return {name, [v](const GameContext&) { return std::make_unique<MemOneStrategy>(v); }};
}

StrategySpec Cooperator() {
  auto s = MemOne(MemOneVector({1, 1, 1, 1}, 1));
  s.name = "cooperator";
  return s;
}

StrategySpec Defector() {
  auto s = MemOne(MemOneVector({0, 0, 0, 0}, 0));
  s.name = "defector";
  return s;
}

StrategySpec RandomSpec(double q) {
  if (!IsProbability(q)) throw ConfigError("random: q must lie in [0, 1]");
  return {"random:" + FormatDouble(q),
          [q](const GameContext&) { return std::make_unique<RandomStrategy>(q); }};
}

StrategySpec Tft() {
  auto s = MemOne(TftVector());
  s.name = "tft";
  return s;
}

StrategySpec TitForTwoTatsSpec() {
  return {"tf2t", [](const GameContext&) { return std::make_unique<TitForTwoTats>(); }};
}

StrategySpec GenerousTft() {
  return {"gtft", [](const GameContext& ctx) {
            return std::make_unique<MemOneStrategy>(GenerousTftVector(ctx.payoffs));
          }};
}

StrategySpec GenerousTft(double generosity) {
  const MemOneVector v = GenerousTftVector(generosity);
  char name[48];
  std::snprintf(name, sizeof(name), "gtft:%.10g", generosity);
  return {name, [v](const GameContext&) { return std::make_unique<MemOneStrategy>(v); }};
}

StrategySpec ContriteTftSpec() {
  return {"ctft", [](const GameContext&) { return std::make_unique<ContriteTft>(); }};
}

StrategySpec Pavlov() {
  auto s = MemOne(PavlovVector());
  s.name = "pavlov";
  return s;
}

StrategySpec GrimTriggerSpec() {
  return {"grim", [](const GameContext&) { return std::make_unique<GrimTrigger>(); }};
}

StrategySpec ZdExtortionSpec(double chi, double phi) {
  ZdExtortion(chi, phi);  // validate eagerly against conventional payoffs
  return {"zd:chi=" + FormatDouble(chi) + ",phi=" + FormatDouble(phi),
          [chi, phi](const GameContext& ctx) {
            return std::make_unique<MemOneStrategy>(ZdExtortion(chi, phi, ctx.payoffs));
          }};
}

std::vector<StrategySpec> BuiltinZoo() {
  return {Cooperator(),      Defector(),          RandomSpec(0.5),
          Tft(),             TitForTwoTatsSpec(), GenerousTft(),
          ContriteTftSpec(), Pavlov(),            GrimTriggerSpec(),
          MemOne(MemOneVector({0.9, 0.6, 0.3, 0.1}, 0.5)),
          ZdExtortionSpec(3.0, 1.0 / 26.0)};
}

}  // namespace ipd
