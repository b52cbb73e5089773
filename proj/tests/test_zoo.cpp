#include <random>
#include <vector>

#include "doctest.h"
#include "ipd/match.hpp"
#include "ipd/registry.hpp"
#include "ipd/zoo.hpp"
#include "oracles.hpp"

using namespace ipd;

namespace {

// Feeds a scripted history to a fresh strategy, one round at a time, and
// returns the action chosen after the full script.
Action After(Strategy& s, const std::vector<Move>& script) {
  Rng rng(1);
  std::vector<Move> h;
  Action last = s.Decide(h, rng);
  for (const Move& m : script) {
    h.push_back(m);
    last = s.Decide(h, rng);
  }
  return last;
}

}  // namespace

TEST_SUITE("zoo") {
  TEST_CASE("memory-1 vectors") {
    CHECK(TftVector().p == std::array<double, 4>{1, 0, 1, 0});
    CHECK(PavlovVector().p == std::array<double, 4>{1, 0, 0, 1});
    CHECK(TftVector().AsSeenByOpponent() == std::array<double, 4>{1, 1, 0, 0});
    CHECK_THROWS_AS(MemOneVector({1.2, 0, 0, 0}, 1), ConfigError);
    CHECK_THROWS_AS(MemOneVector({1, 0, 0, 0}, -0.1), ConfigError);
  }

  TEST_CASE("memory-1 step always draws once") {
    Rng a(5), b(5);
    MemOneStep(MemOneVector({1, 1, 1, 1}, 1), kCC, a);
    b.Uniform();
    CHECK(a.Uniform() == b.Uniform());
  }

  TEST_CASE("zd extortion vector") {
    const auto v = ZdExtortion(3.0, 1.0 / 26.0);
    CHECK(v.p[0] == doctest::Approx(11.0 / 13.0).epsilon(1e-12));
    CHECK(v.p[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(v.p[2] == doctest::Approx(7.0 / 26.0).epsilon(1e-12));
    CHECK(v.p[3] == 0.0);
    CHECK(v.first_move_coop == 0.0);
  }

  TEST_CASE("zd feasibility bounds") {
    CHECK(ZdMaxPhi(3.0) == doctest::Approx(1.0 / 13.0));
    CHECK_NOTHROW(ZdExtortion(3.0, ZdMaxPhi(3.0)));
    CHECK_THROWS_WITH_AS(ZdExtortion(3.0, 0.1), doctest::Contains("p_CD"), ConfigError);
    CHECK_THROWS_AS(ZdExtortion(0.5, 0.01), ConfigError);
    CHECK_THROWS_AS(ZdExtortion(2.0, 0.0), ConfigError);
    for (double chi : {1.5, 2.0, 3.0, 5.0}) {
      const auto v = ZdExtortion(chi, ZdMaxPhi(chi));
      for (double x : v.p) {
        CHECK(x >= -1e-12);
        CHECK(x <= 1 + 1e-12);
      }
    }
  }

  TEST_CASE("zd enforces the extortion relation against interior opponents") {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> unif(0.05, 0.95);
    for (double chi : {1.5, 3.0}) {
      const auto zd = ZdExtortion(chi, 0.5 * ZdMaxPhi(chi));
      for (int k = 0; k < 10; ++k) {
        const MemOneVector opp({unif(gen), unif(gen), unif(gen), unif(gen)}, 0.5);
        const auto pi = oracle::Stationary(zd.p, opp.AsSeenByOpponent());
        const double s_zd = pi[0] * 3 + pi[1] * 0 + pi[2] * 5 + pi[3] * 1;
        const double s_opp = pi[0] * 3 + pi[1] * 5 + pi[2] * 0 + pi[3] * 1;
        CHECK((s_zd - 1) == doctest::Approx(chi * (s_opp - 1)).epsilon(1e-6));
      }
    }
  }

  TEST_CASE("generous tft") {
    const PayoffParams u;
    CHECK(GenerousTftBound(u) == doctest::Approx(1.0 / 3.0));
    CHECK(GenerousTftProbability(u) == doctest::Approx(0.25));
    CHECK(GenerousTftVector(u).p == std::array<double, 4>{1, 0.25, 1, 0.25});
    CHECK(GenerousTftBound(PayoffParams(4, 3, 1, 0)) == doctest::Approx(2.0 / 3.0));
  }

  TEST_CASE("tit for two tats") {
    TitForTwoTats a;
    CHECK(After(a, {{C, D}}) == C);
    TitForTwoTats b;
    CHECK(After(b, {{C, D}, {C, D}}) == D);
    TitForTwoTats c;
    CHECK(After(c, {{C, D}, {C, C}, {C, D}}) == C);
  }

  TEST_CASE("grim trigger never forgives") {
    GrimTrigger g;
    CHECK(After(g, {{C, C}, {C, D}, {D, C}, {D, C}, {D, C}}) == D);
    GrimTrigger h;
    CHECK(After(h, {{C, C}, {C, C}}) == C);
  }

  TEST_CASE("contrite tft") {
    // Opponent defects unprovoked: retaliate once, then forgive.
    ContriteTft a;
    CHECK(After(a, {{C, C}, {C, D}}) == D);
    ContriteTft b;
    CHECK(After(b, {{C, C}, {C, D}, {D, C}}) == C);
    // Own accidental defection: accept the retaliation without answering it.
    ContriteTft c;
    CHECK(After(c, {{C, C}, {D, C}, {C, D}}) == C);
    ContriteTft d;
    CHECK(After(d, {{C, C}, {D, C}, {C, D}, {C, C}}) == C);
    // Simultaneous defections: both lose standing only if the other was good,
    // so both stay in bad standing and nobody is punished.
    ContriteTft e;
    CHECK(After(e, {{C, C}, {D, D}}) == C);
  }

  TEST_CASE("contrite tft recovers cooperation with itself after noise") {
    MatchConfig cfg{2000, 0.05, {}, 2};
    const auto r = RunMatch(ContriteTftSpec().make, ContriteTftSpec().make, cfg);
    CHECK(r.avg_payoff_a + r.avg_payoff_b > 2 * 2.8);
  }

  TEST_CASE("random strategy cooperation rate") {
    MatchConfig cfg{100000, 0.0, {}, 9};
    const auto r = RunMatch(RandomSpec(0.3).make, Cooperator().make, cfg);
    int coop = 0;
    for (const auto& rec : r.rounds) coop += rec.actual_a == C;
    CHECK(coop / 100000.0 == doctest::Approx(0.3).epsilon(0.02));
    CHECK_THROWS_AS(RandomSpec(1.5), ConfigError);
  }

  TEST_CASE("builtin zoo") {
    const auto zoo = BuiltinZoo();
    CHECK(zoo.size() == 11);
    for (const auto& s : zoo) CHECK_NOTHROW(ParseStrategy(s.name));
  }

  TEST_CASE("registry parses parameterized names") {
    CHECK(ParseStrategy("memone:1,0,1,0;first=1").name == "memone:1,0,1,0;first=1");
    CHECK(ParseStrategy("zd:chi=3,phi=0.0385").name == "zd:chi=3,phi=0.0385");
    CHECK(ParseStrategy("random:0.25").name == "random:0.25");
    CHECK(ParseStrategy("gtft:0.1").name == "gtft:0.1");
    CHECK(ParseStrategy("cooperate-iso-revert1:freeze,rearm").name ==
          "cooperate-iso-revert1:freeze,rearm");
    CHECK_THROWS_AS(ParseStrategy("nope"), ConfigError);
    CHECK_THROWS_AS(ParseStrategy("memone:1,0,1"), ConfigError);
    CHECK_THROWS_AS(ParseStrategy("memone:1,0,1,x"), ConfigError);
    CHECK_THROWS_AS(ParseStrategy("zd:chi=3"), ConfigError);
    CHECK_THROWS_AS(ParseStrategy("zd:chi=3,phi=0.5"), ConfigError);
    CHECK_THROWS_AS(ParseStrategy("cooperate-iso:sometimes"), ConfigError);
    CHECK(DefaultPoolNames().size() == 16);
  }
}
