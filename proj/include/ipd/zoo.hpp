#ifndef IPD_ZOO_HPP_
#define IPD_ZOO_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ipd/game.hpp"
#include "ipd/rng.hpp"
#include "ipd/strategy.hpp"

namespace ipd {

// Memory-1 strategy: cooperation probability after each joint state (CC, CD,
// DC, DD, own action first) plus the first-round cooperation probability.
struct MemOneVector {
  std::array<double, 4> p{1.0, 1.0, 1.0, 1.0};
  double first_move_coop = 1.0;

  MemOneVector() = default;
  MemOneVector(std::array<double, 4> probs, double first);

  // The same strategy indexed by states seen from its opponent's side.
  std::array<double, 4> AsSeenByOpponent() const;

  bool operator==(const MemOneVector&) const = default;
};

// Exactly one draw per call, regardless of whether the entry is 0 or 1.
Action MemOneStep(const MemOneVector& v, std::optional<JointState> state, Rng& rng);

// Extortionate zero-determinant strategy enforcing
//   s_self - P = chi * (s_opp - P)
// with p_DD fixed at 0. Throws ConfigError naming the violated bound when
// (chi, phi) gives a probability outside [0, 1].
MemOneVector ZdExtortion(double chi, double phi,
                         const PayoffParams& payoffs = PayoffParams::Conventional());

// Largest phi for which ZdExtortion(chi, phi) is feasible.
double ZdMaxPhi(double chi, const PayoffParams& payoffs = PayoffParams::Conventional());

// Largest generosity for which exploiting GTFT by alternating C and D does not
// beat mutual cooperation without noise: min(1 - (T-R)/(R-S), (R-P)/(T-P)).
double GenerousTftBound(const PayoffParams& payoffs);
// At the bound itself, noise tips the balance towards the alternating
// exploiter, so GTFT uses a fixed share of it (1/4 with conventional payoffs).
inline constexpr double kGenerosityShare = 0.75;
double GenerousTftProbability(const PayoffParams& payoffs);

MemOneVector TftVector();
MemOneVector PavlovVector();
MemOneVector GenerousTftVector(const PayoffParams& payoffs);
MemOneVector GenerousTftVector(double generosity);

class MemOneStrategy : public Strategy {
 public:
  explicit MemOneStrategy(MemOneVector v) : v_(v) {}
  Action Decide(std::span<const Move> history, Rng& rng) override;
  const MemOneVector& vector() const { return v_; }

 private:
  MemOneVector v_;
};

// Cooperates with probability q every round (before noise).
class RandomStrategy : public Strategy {
 public:
  explicit RandomStrategy(double q) : q_(q) {}
  Action Decide(std::span<const Move> history, Rng& rng) override;

 private:
  double q_;
};

// Defects only after two consecutive opponent defections.
class TitForTwoTats : public Strategy {
 public:
  Action Decide(std::span<const Move> history, Rng& rng) override;
};

class GrimTrigger : public Strategy {
 public:
  Action Decide(std::span<const Move> history, Rng& rng) override;

 private:
  bool triggered_ = false;
  std::size_t seen_ = 0;
};

// Interpretation of Contrite TFT using standing: a player falls into bad
// standing by defecting while the other is in good standing and is restored
// by cooperating. Defects only when the opponent is in bad standing and it is
// itself in good standing, so its own accidental defections are atoned for
// by cooperating through the opponent's retaliation.
class ContriteTft : public Strategy {
 public:
  Action Decide(std::span<const Move> history, Rng& rng) override;

 private:
  bool own_good_ = true;
  bool opp_good_ = true;
  std::size_t seen_ = 0;
};

// Named strategy recipes for the baseline zoo.
StrategySpec Cooperator();
StrategySpec Defector();
StrategySpec RandomSpec(double q);
StrategySpec Tft();
StrategySpec TitForTwoTatsSpec();
StrategySpec GenerousTft();
// Explicit generosity; registry name "gtft:<g>".
StrategySpec GenerousTft(double generosity);
StrategySpec ContriteTftSpec();
StrategySpec Pavlov();
StrategySpec GrimTriggerSpec();
StrategySpec MemOne(const MemOneVector& v);
StrategySpec ZdExtortionSpec(double chi, double phi);

// {Cooperator, Defector, Random(0.5), TFT, TitForTwoTats, GenerousTFT,
//  ContriteTFT, Pavlov, GrimTrigger, MemOne(0.9, 0.6, 0.3, 0.1; first 0.5),
//  ZDExtortion(3, 1/26)}.
std::vector<StrategySpec> BuiltinZoo();

}  // namespace ipd

#endif  // IPD_ZOO_HPP_
