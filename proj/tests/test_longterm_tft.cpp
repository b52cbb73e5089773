#include <cmath>
#include <vector>

#include "doctest.h"
#include "ipd/harness.hpp"
#include "ipd/longterm_tft.hpp"
#include "ipd/match.hpp"
#include "ipd/zoo.hpp"

using namespace ipd;

namespace {

// Opponent that cooperates except on the listed (0-based) rounds.
class Scripted : public Strategy {
 public:
  explicit Scripted(std::vector<int> defect_rounds) : defect_(std::move(defect_rounds)) {}
  Action Decide(std::span<const Move> history, Rng&) override {
    const int t = static_cast<int>(history.size());
    for (int d : defect_) {
      if (d == t) return D;
    }
    return C;
  }

 private:
  std::vector<int> defect_;
};

}  // namespace

TEST_SUITE("longterm_tft") {
  TEST_CASE("z statistic examples") {
    CHECK(ZStat({0, 0}, 0.1) == 0.0);
    CHECK(ZStat({100, 5}, 0.05) == doctest::Approx(0.0));
    CHECK(ZStat({10, 3}, 0.1) == doctest::Approx(2.0));
    // Large n_c: the binomial standard deviation takes over.
    CHECK(ZStat({400, 30}, 0.05) == doctest::Approx(10 / std::sqrt(0.05 * 0.95 * 400)));
  }

  TEST_CASE("counter updates") {
    CHECK(UpdateCounters({0, 0}, C, D) == ForgivenessCounters{1, 1});
    CHECK(UpdateCounters({0, 0}, D, D) == ForgivenessCounters{0, 0});
    CHECK(UpdateCounters({0, 0}, C, C) == ForgivenessCounters{1, 0});
  }

  TEST_CASE("decision examples") {
    const std::vector<Move> none;
    CHECK(LongtermTftDecide({0, 0}, none, 0.05) == C);
    const std::vector<Move> opp_defected{{C, D}};
    CHECK(LongtermTftDecide({20, 1}, opp_defected, 0.05) == C);
    CHECK(LongtermTftDecide({4, 0}, opp_defected, 0.05) == D);
    CHECK(LongtermTftDecide({10, 3}, opp_defected, 0.1) == D);
  }

  TEST_CASE("counters skip the latest own action") {
    const std::vector<Move> h{{C, C}, {C, D}, {D, C}};
    ForgivenessCounters k;
    AdvanceCounters(k, h, 0);
    // Pairs: (own0=C, opp1=D), (own1=C, opp2=C); own2 not yet answered.
    CHECK(k == ForgivenessCounters{2, 1});
  }

  TEST_CASE("never defects against an always-reciprocating opponent") {
    MatchConfig cfg{500, 0.0, {}, 1};
    const auto r = RunMatch(LongtermTftSpec().make, Tft().make, cfg);
    for (const auto& rec : r.rounds) CHECK(rec.intended_a == C);
  }

  TEST_CASE("forgives at most two unprovoked defections while p n_c < 1") {
    const double p = 0.01;
    // Unprovoked defections at rounds 10 and 20 are both forgiven; the third
    // (round 30) is answered.
    LongtermTft ltft(p);
    Scripted opp({10, 20, 30});
    const auto r = PlayMatch(ltft, opp, {40, 0.0, {}, 1});
    for (int t = 0; t < 40; ++t) {
      const bool retaliation_due = t == 31;
      CHECK_MESSAGE((r.rounds[t].intended_a == D) == retaliation_due, "round " << t);
    }
  }

  TEST_CASE("with zero noise two unprovoked defections switch it to tft") {
    LongtermTft ltft(0.0);
    Scripted opp({8, 12});
    const auto r = PlayMatch(ltft, opp, {16, 0.0, {}, 1});
    CHECK(r.rounds[9].intended_a == C);
    CHECK(r.rounds[13].intended_a == D);
    CHECK(r.rounds[14].intended_a == C);
  }

  TEST_CASE("plays tft for the first cooperations") {
    LongtermTft ltft(0.05);
    Scripted opp({1});
    const auto r = PlayMatch(ltft, opp, {4, 0.0, {}, 1});
    CHECK(r.rounds[2].intended_a == D);
  }

  TEST_CASE("z is standard normal under the null") {
    const double p = 0.05;
    Rng rng(123);
    const int trials = 1000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < trials; ++i) {
      ForgivenessCounters k;
      while (k.n_c < 500) k = UpdateCounters(k, C, rng.Bernoulli(p) ? D : C);
      const double z = ZStat(k, p);
      sum += z;
      sum_sq += z * z;
    }
    const double mean = sum / trials;
    const double sd = std::sqrt(sum_sq / trials - mean * mean);
    CHECK(std::fabs(mean) <= 0.1);
    CHECK(std::fabs(sd - 1.0) <= 0.15);
  }

  TEST_CASE("steady-state self-cooperation under noise") {
    const auto r = SelfPlay(LongtermTftSpec(), 0.05, 20, 2000, {}, 5);
    CHECK(r.last_half_mean == doctest::Approx(2.9475).epsilon(0.05 / 2.9475));
  }
}
