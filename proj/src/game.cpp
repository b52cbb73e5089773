#include "ipd/game.hpp"

#include <string>

namespace ipd {

Action ActionFromChar(char c) {
  if (c == 'C' || c == 'c') return C;
  if (c == 'D' || c == 'd') return D;
  throw ConfigError(std::string("invalid action character '") + c + "'");
}

PayoffParams::PayoffParams(double t, double r, double p, double s)
    : t_(t), r_(r), p_(p), s_(s) {
  if (!(t > r && r > p && p > s)) {
    throw ConfigError("payoffs must satisfy T > R > P > S, got T=" +
                      std::to_string(t) + " R=" + std::to_string(r) +
                      " P=" + std::to_string(p) + " S=" + std::to_string(s));
  }
}

std::pair<double, double> Payoff(Action a, Action b, const PayoffParams& params) {
  if (a == C) return b == C ? std::pair{params.r(), params.r()}
                            : std::pair{params.s(), params.t()};
  return b == C ? std::pair{params.t(), params.s()}
                : std::pair{params.p(), params.p()};
}

void ValidateNoise(double p_noise) {
  if (!(p_noise >= 0.0 && p_noise <= 0.5)) {
    throw ConfigError("p_noise must lie in [0, 0.5], got " +
                      std::to_string(p_noise));
  }
}

}  // namespace ipd
