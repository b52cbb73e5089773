#ifndef IPD_GAME_HPP_
#define IPD_GAME_HPP_

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace ipd {

enum class Action : std::uint8_t { kCooperate = 0, kDefect = 1 };

inline constexpr Action C = Action::kCooperate;
inline constexpr Action D = Action::kDefect;

constexpr Action Flip(Action a) { return a == C ? D : C; }
constexpr char ToChar(Action a) { return a == C ? 'C' : 'D'; }
Action ActionFromChar(char c);

// Thrown for any invalid user-supplied parameter or configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Prisoner's dilemma payoffs. Construction enforces t > r > p > s.
class PayoffParams {
 public:
  PayoffParams() = default;
  PayoffParams(double t, double r, double p, double s);

  static PayoffParams Conventional() { return {}; }

  double t() const { return t_; }
  double r() const { return r_; }
  double p() const { return p_; }
  double s() const { return s_; }

  // Leading-order noise coefficient of the best response to Longterm TFT.
  double NoiseSlope() const { return s_ + 2 * t_ - 3 * r_; }

  // Own payoffs per joint state, ordered (CC, CD, DC, DD).
  std::array<double, 4> SelfPayoffVector() const { return {r_, s_, t_, p_}; }
  std::array<double, 4> OpponentPayoffVector() const { return {r_, t_, s_, p_}; }

  bool operator==(const PayoffParams&) const = default;

 private:
  double t_ = 5.0;
  double r_ = 3.0;
  double p_ = 1.0;
  double s_ = 0.0;
};

// (payoff to a, payoff to b).
std::pair<double, double> Payoff(Action a, Action b, const PayoffParams& params);

// Previous round's actual actions seen from one player: index CC=0, CD=1,
// DC=2, DD=3 where the first letter is the player's own action.
struct JointState {
  Action my_last = C;
  Action opp_last = C;

  constexpr int Index() const {
    return 2 * static_cast<int>(my_last) + static_cast<int>(opp_last);
  }
  static constexpr JointState FromIndex(int i) {
    return {(i & 2) ? D : C, (i & 1) ? D : C};
  }
  constexpr JointState Mirrored() const { return {opp_last, my_last}; }
  std::string Name() const { return {ToChar(my_last), ToChar(opp_last)}; }

  bool operator==(const JointState&) const = default;
};

inline constexpr JointState kCC{C, C};
inline constexpr JointState kCD{C, D};
inline constexpr JointState kDC{D, C};
inline constexpr JointState kDD{D, D};

// Index of the same state seen by the other player (CD <-> DC).
constexpr int MirrorIndex(int i) { return JointState::FromIndex(i).Mirrored().Index(); }

void ValidateNoise(double p_noise);

}  // namespace ipd

#endif  // IPD_GAME_HPP_
