#ifndef IPD_MARKOV_HPP_
#define IPD_MARKOV_HPP_

#include <array>

#include "ipd/game.hpp"
#include "ipd/zoo.hpp"

namespace ipd {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<Vec4, 4>;

// Probability of actually cooperating when intending to with probability p.
constexpr double NoiseTransform(double p, double p_noise) {
  return (1.0 - p_noise) * p + p_noise * (1.0 - p);
}
Vec4 NoiseTransform(const Vec4& p, double p_noise);

inline constexpr double kGammaPast = 0.99;
inline constexpr double kGammaFuture = 0.99;

// Discounted memory-1 estimate of the opponent: coop_rate[s] is the
// probability that the opponent's next ACTUAL action is C after joint state s
// (own perspective). Starts from one pseudo-observation of TFT per state.
struct OpponentModel {
  Vec4 coop_rate{1.0, 1.0, 0.0, 0.0};
  Vec4 weight{1.0, 1.0, 1.0, 1.0};
  double gamma_past = kGammaPast;
};

OpponentModel ModelInit(double p_noise, double gamma_past = kGammaPast);

// Discounted-count update of the state that preceded `opp_actual`, clamped to
// [p_noise, 1 - p_noise]. Other states are untouched.
OpponentModel ModelUpdate(OpponentModel m, JointState state, Action opp_actual,
                          double p_noise);

// Row s: (ps*po, ps*(1-po), (1-ps)*po, (1-ps)*(1-po)) with ps = p_self_n[s],
// po = p_opp_n[s]; columns ordered CC, CD, DC, DD from the self perspective.
Mat4 TransitionMatrix(const Vec4& p_self_n, const Vec4& p_opp_n);

// Solves a x = b by Gaussian elimination with partial pivoting. Throws
// std::domain_error on a (numerically) singular matrix.
Vec4 Solve4(Mat4 a, Vec4 b);

struct ValueQuery {
  Vec4 p_self{0.5, 0.5, 0.5, 0.5};  // intended
  Vec4 p_opp_n{0.5, 0.5, 0.5, 0.5};  // already includes noise
  JointState s0 = kCC;
  double gamma = kGammaFuture;
  PayoffParams payoffs;
  double p_noise = 0.0;
};

// Average discounted payoff per round from s0:
//   (1 - g) s0' T (I - g T)^-1 u,  u = (R, S, T, P).
double DiscountedValue(const ValueQuery& q);

// The opponent's counterpart of DiscountedValue (u = (R, T, S, P)).
double DiscountedOpponentValue(const ValueQuery& q);

struct ValueGrad {
  double value = 0.0;
  Vec4 grad{};
};

// Value and its exact gradient w.r.t. the intended p_self, using
// dU/dps[s] = (1-g) (M' s0)[s] (dT_s . x) (1 - 2 p_noise), x = M u,
// M = (I - g T)^-1.
ValueGrad ValueAndGrad(const ValueQuery& q);
inline Vec4 GradValue(const ValueQuery& q) { return ValueAndGrad(q).grad; }

// Central differences; entries near the box edge are not clamped.
Vec4 FiniteDifferenceGrad(const ValueQuery& q, double step = 1e-5);

struct AdamConfig {
  int steps = 50;
  double learning_rate = 0.1;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double start = 0.5;
};

struct PolicyResult {
  MemOneVector policy;
  double value = 0.0;
};

// Projected Adam ascent on DiscountedValue over p_self in [0,1]^4; returns
// the best iterate seen (the start point included).
PolicyResult OptimizePolicy(const Vec4& p_opp_n, JointState s0, double gamma,
                            const PayoffParams& payoffs, double p_noise,
                            const AdamConfig& adam = {});

// Exhaustive search over the 16 deterministic policies. The self player faces
// a 4-state, 2-action discounted MDP, so one of them is optimal.
PolicyResult CornerOracle(const Vec4& p_opp_n, JointState s0, double gamma,
                          const PayoffParams& payoffs, double p_noise);

}  // namespace ipd

#endif  // IPD_MARKOV_HPP_
