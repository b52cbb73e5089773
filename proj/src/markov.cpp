#include "ipd/markov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace ipd {
namespace {

double Clamp(double x, double lo, double hi) { return std::min(hi, std::max(lo, x)); }

Mat4 IdentityMinus(double gamma, const Mat4& t) {
  Mat4 a{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) a[i][j] = (i == j ? 1.0 : 0.0) - gamma * t[i][j];
  }
  return a;
}

Mat4 Transposed(const Mat4& a) {
  Mat4 t{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) t[i][j] = a[j][i];
  }
  return t;
}

void CheckGamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::domain_error("discount factor must lie in (0, 1)");
  }
}

double ValueWithPayoffs(const ValueQuery& q, const Vec4& u) {
  CheckGamma(q.gamma);
  const Mat4 t = TransitionMatrix(NoiseTransform(q.p_self, q.p_noise), q.p_opp_n);
  const Vec4 x = Solve4(IdentityMinus(q.gamma, t), u);
  const auto& row = t[q.s0.Index()];
  double acc = 0.0;
  for (int j = 0; j < 4; ++j) acc += row[j] * x[j];
  return (1.0 - q.gamma) * acc;
}

}  // namespace

Vec4 NoiseTransform(const Vec4& p, double p_noise) {
  Vec4 out{};
  for (int i = 0; i < 4; ++i) out[i] = NoiseTransform(p[i], p_noise);
  return out;
}

OpponentModel ModelInit(double p_noise, double gamma_past) {
  ValidateNoise(p_noise);
  OpponentModel m;
  m.gamma_past = gamma_past;
  // TFT (seen from our side) cooperates iff our last action was C.
  m.coop_rate = {1.0, 1.0, 0.0, 0.0};
  for (double& c : m.coop_rate) c = Clamp(c, p_noise, 1.0 - p_noise);
  return m;
}

OpponentModel ModelUpdate(OpponentModel m, JointState state, Action opp_actual,
                          double p_noise) {
  const int s = state.Index();
  const double old_mass = m.gamma_past * m.weight[s];
  m.weight[s] = old_mass + 1.0;
  m.coop_rate[s] = (old_mass * m.coop_rate[s] + (opp_actual == C ? 1.0 : 0.0)) / m.weight[s];
  m.coop_rate[s] = Clamp(m.coop_rate[s], p_noise, 1.0 - p_noise);
  return m;
}

Mat4 TransitionMatrix(const Vec4& p_self_n, const Vec4& p_opp_n) {
  Mat4 t{};
  for (int s = 0; s < 4; ++s) {
    const double ps = p_self_n[s];
    const double po = p_opp_n[s];
    t[s] = {ps * po, ps * (1.0 - po), (1.0 - ps) * po, (1.0 - ps) * (1.0 - po)};
  }
  return t;
}

Vec4 Solve4(Mat4 a, Vec4 b) {
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-14) throw std::domain_error("singular 4x4 system");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = col + 1; r < 4; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  Vec4 x{};
  for (int r = 3; r >= 0; --r) {
    double acc = b[r];
    for (int c = r + 1; c < 4; ++c) acc -= a[r][c] * x[c];
    x[r] = acc / a[r][r];
  }
  return x;
}

double DiscountedValue(const ValueQuery& q) {
  return ValueWithPayoffs(q, q.payoffs.SelfPayoffVector());
}

double DiscountedOpponentValue(const ValueQuery& q) {
  return ValueWithPayoffs(q, q.payoffs.OpponentPayoffVector());
}

ValueGrad ValueAndGrad(const ValueQuery& q) {
  CheckGamma(q.gamma);
  const Mat4 t = TransitionMatrix(NoiseTransform(q.p_self, q.p_noise), q.p_opp_n);
  const Mat4 a = IdentityMinus(q.gamma, t);
  const Vec4 x = Solve4(a, q.payoffs.SelfPayoffVector());
  Vec4 s0{};
  s0[q.s0.Index()] = 1.0;
  const Vec4 v = Solve4(Transposed(a), s0);

  ValueGrad out;
  const auto& row = t[q.s0.Index()];
  for (int j = 0; j < 4; ++j) out.value += row[j] * x[j];
  out.value *= 1.0 - q.gamma;

  const double chain = 1.0 - 2.0 * q.p_noise;
  for (int s = 0; s < 4; ++s) {
    const double po = q.p_opp_n[s];
    const double d_row_dot_x = po * x[0] + (1.0 - po) * x[1] - po * x[2] - (1.0 - po) * x[3];
    out.grad[s] = (1.0 - q.gamma) * v[s] * d_row_dot_x * chain;
  }
  return out;
}

Vec4 FiniteDifferenceGrad(const ValueQuery& q, double step) {
  Vec4 g{};
  for (int s = 0; s < 4; ++s) {
    ValueQuery up = q;
    ValueQuery down = q;
    up.p_self[s] += step;
    down.p_self[s] -= step;
    g[s] = (DiscountedValue(up) - DiscountedValue(down)) / (2.0 * step);
  }
  return g;
}

PolicyResult OptimizePolicy(const Vec4& p_opp_n, JointState s0, double gamma,
                            const PayoffParams& payoffs, double p_noise,
                            const AdamConfig& adam) {
  ValueQuery q{{adam.start, adam.start, adam.start, adam.start}, p_opp_n, s0, gamma,
               payoffs, p_noise};
  Vec4 m{};
  Vec4 v{};
  ValueGrad vg = ValueAndGrad(q);
  Vec4 best = q.p_self;
  double best_value = vg.value;
  double beta1_pow = 1.0;
  double beta2_pow = 1.0;
  for (int step = 1; step <= adam.steps; ++step) {
    beta1_pow *= adam.beta1;
    beta2_pow *= adam.beta2;
    for (int i = 0; i < 4; ++i) {
      const double g = vg.grad[i];
      m[i] = adam.beta1 * m[i] + (1.0 - adam.beta1) * g;
      v[i] = adam.beta2 * v[i] + (1.0 - adam.beta2) * g * g;
      const double m_hat = m[i] / (1.0 - beta1_pow);
      const double v_hat = v[i] / (1.0 - beta2_pow);
      q.p_self[i] = Clamp(q.p_self[i] + adam.learning_rate * m_hat /
                                            (std::sqrt(v_hat) + adam.epsilon),
                          0.0, 1.0);
    }
    vg = ValueAndGrad(q);
    if (vg.value > best_value) {
      best_value = vg.value;
      best = q.p_self;
    }
  }
  return {MemOneVector(best, 1.0), best_value};
}

PolicyResult CornerOracle(const Vec4& p_opp_n, JointState s0, double gamma,
                          const PayoffParams& payoffs, double p_noise) {
  PolicyResult best;
  best.value = -1e300;
  for (int mask = 0; mask < 16; ++mask) {
    ValueQuery q{{}, p_opp_n, s0, gamma, payoffs, p_noise};
    for (int s = 0; s < 4; ++s) q.p_self[s] = (mask >> (3 - s)) & 1 ? 1.0 : 0.0;
    const double value = DiscountedValue(q);
    if (value > best.value) {
      best.value = value;
      best.policy = MemOneVector(q.p_self, 1.0);
    }
  }
  return best;
}

}  // namespace ipd
