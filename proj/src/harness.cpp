#include "ipd/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "ipd/markov.hpp"
#include "ipd/match.hpp"
#include "ipd/registry.hpp"

namespace ipd {
namespace {

std::string Fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

// Sum and sum of squares of one seat's per-step payoffs.
struct PayoffMoments {
  double sum = 0.0;
  double sum_sq = 0.0;
  long n = 0;

  void Merge(const PayoffMoments& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    n += o.n;
  }
  double Mean() const { return n > 0 ? sum / static_cast<double>(n) : 0.0; }
  double SampleStd() const {
    if (n < 2) return 0.0;
    const double mean = Mean();
    const double var = (sum_sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
    return var > 0.0 ? std::sqrt(var) : 0.0;
  }
};

// Steady-state (final half) mean payoffs of a vs b over `seeds` matches.
struct SteadyPair {
  double a = 0.0;
  double b = 0.0;
};

std::vector<SteadyPair> SteadyStateBatch(
    const std::vector<std::pair<StrategyFactory, StrategyFactory>>& pairs, double p_noise,
    const AuditOptions& options, std::uint64_t stream) {
  const std::size_t seeds = static_cast<std::size_t>(std::max(1, options.seeds));
  std::vector<SteadyPair> per_match(pairs.size() * seeds);
  ParallelFor(per_match.size(), options.threads, [&](std::size_t job) {
    const std::size_t pair = job / seeds;
    const std::size_t rep = job % seeds;
    MatchConfig cfg{options.length, p_noise, options.payoffs,
                    DeriveSeed(options.master_seed, {stream, pair, rep})};
    const MatchResult r = RunMatch(pairs[pair].first, pairs[pair].second, cfg);
    const int begin = options.length / 2;
    double sa = 0.0;
    double sb = 0.0;
    for (int t = begin; t < options.length; ++t) {
      sa += r.rounds[t].payoff_a;
      sb += r.rounds[t].payoff_b;
    }
    per_match[job] = {sa / (options.length - begin), sb / (options.length - begin)};
  });
  std::vector<SteadyPair> out(pairs.size());
  for (std::size_t job = 0; job < per_match.size(); ++job) {
    out[job / seeds].a += per_match[job].a / static_cast<double>(seeds);
    out[job / seeds].b += per_match[job].b / static_cast<double>(seeds);
  }
  return out;
}

std::uint64_t NoiseKey(double p_noise) {
  return static_cast<std::uint64_t>(std::llround(p_noise * 1e9));
}

}  // namespace

void ParallelFor(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Tournaments

void TournamentConfig::Validate() const {
  if (length < 1) throw ConfigError("length must be >= 1");
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (pool.empty()) throw ConfigError("pool must not be empty");
  if (noise_levels.empty()) throw ConfigError("noise_levels must not be empty");
  for (double p : noise_levels) ValidateNoise(p);
  std::string unknown;
  auto check = [&](const std::string& name) {
    try {
      ParseStrategy(name);
    } catch (const ConfigError&) {
      unknown += (unknown.empty() ? "" : ", ") + name;
    }
  };
  for (const auto& n : pool) check(n);
  for (const auto& n : evaluate) check(n);
  if (!unknown.empty()) throw ConfigError("unknown strategy name(s): " + unknown);
}

const TournamentEntry* TournamentReport::Find(const std::string& strategy, double noise) const {
  for (const auto& e : entries) {
    if (e.strategy == strategy && e.noise == noise) return &e;
  }
  return nullptr;
}

TournamentReport RunTournament(const TournamentConfig& config) {
  config.Validate();
  const auto pool = ParseStrategies(config.pool);
  const auto evaluated = ParseStrategies(config.evaluate.empty() ? config.pool : config.evaluate);
  const std::size_t n_noise = config.noise_levels.size();
  const std::size_t n_eval = evaluated.size();
  const std::size_t n_pool = pool.size();
  const std::size_t reps = static_cast<std::size_t>(config.repetitions);

  std::vector<PayoffMoments> moments(n_noise * n_eval * n_pool * reps);
  ParallelFor(moments.size(), config.threads, [&](std::size_t job) {
    std::size_t rest = job;
    const std::size_t rep = rest % reps;
    rest /= reps;
    const std::size_t opp = rest % n_pool;
    rest /= n_pool;
    const std::size_t ev = rest % n_eval;
    const std::size_t noise = rest / n_eval;
    MatchConfig cfg{config.length, config.noise_levels[noise], config.payoffs,
                    DeriveSeed(config.master_seed, {noise, ev, opp, rep})};
    const MatchResult r = RunMatch(evaluated[ev].make, pool[opp].make, cfg);
    PayoffMoments m;
    for (const auto& round : r.rounds) {
      m.sum += round.payoff_a;
      m.sum_sq += round.payoff_a * round.payoff_a;
      ++m.n;
    }
    moments[job] = m;
  });

  const double se_scale = std::sqrt(static_cast<double>(reps) * config.length);
  TournamentReport report;
  for (std::size_t noise = 0; noise < n_noise; ++noise) {
    const std::size_t first = report.entries.size();
    for (std::size_t ev = 0; ev < n_eval; ++ev) {
      TournamentEntry entry;
      entry.strategy = evaluated[ev].name;
      entry.noise = config.noise_levels[noise];
      PayoffMoments total;
      for (std::size_t opp = 0; opp < n_pool; ++opp) {
        PayoffMoments vs;
        for (std::size_t rep = 0; rep < reps; ++rep) {
          vs.Merge(moments[((noise * n_eval + ev) * n_pool + opp) * reps + rep]);
        }
        total.Merge(vs);
        entry.per_opponent.push_back({pool[opp].name, vs.Mean(), vs.SampleStd() / se_scale});
      }
      entry.mean = total.Mean();
      entry.std_error = total.SampleStd() / se_scale;
      report.entries.push_back(std::move(entry));
    }
    // Rank within the noise level; ties share the better rank.
    for (std::size_t i = first; i < report.entries.size(); ++i) {
      int better = 0;
      for (std::size_t j = first; j < report.entries.size(); ++j) {
        if (report.entries[j].mean > report.entries[i].mean) ++better;
      }
      report.entries[i].rank = better + 1;
    }
  }
  return report;
}

nlohmann::json ToJson(const TournamentReport& report) {
  auto entries = nlohmann::json::array();
  for (const auto& e : report.entries) {
    auto opps = nlohmann::json::array();
    for (const auto& o : e.per_opponent) {
      opps.push_back({{"opponent", o.opponent}, {"mean", o.mean}, {"stderr", o.std_error}});
    }
    entries.push_back({{"strategy", e.strategy},
                       {"noise", e.noise},
                       {"mean", e.mean},
                       {"stderr", e.std_error},
                       {"rank", e.rank},
                       {"per_opponent", std::move(opps)}});
  }
  return {{"entries", std::move(entries)}};
}

void WriteCsv(const TournamentReport& report, std::ostream& out) {
  out << "strategy,noise,mean,stderr,rank\n";
  for (const auto& e : report.entries) {
    out << e.strategy << ',' << Fmt(e.noise) << ',' << Fmt(e.mean) << ',' << Fmt(e.std_error)
        << ',' << e.rank << '\n';
  }
}

// ---------------------------------------------------------------------------
// Self-play

double NoisyMutualCooperationPayoff(const PayoffParams& u, double p) {
  return (1 - p) * (1 - p) * u.r() + p * (1 - p) * (u.t() + u.s()) + p * p * u.p();
}

double NoisyMutualDefectionPayoff(const PayoffParams& u, double p) {
  return (1 - p) * (1 - p) * u.p() + p * (1 - p) * (u.t() + u.s()) + p * p * u.r();
}

double RandomPlayPayoff(const PayoffParams& u) { return (u.r() + u.s() + u.t() + u.p()) / 4; }

SelfPlayResult SelfPlay(const StrategySpec& strategy, double p_noise, int games, int length,
                        const PayoffParams& payoffs, std::uint64_t master_seed, int threads) {
  if (games < 1) throw ConfigError("games must be >= 1");
  if (length < 1) throw ConfigError("length must be >= 1");
  ValidateNoise(p_noise);
  std::vector<std::vector<double>> per_game(games);
  ParallelFor(per_game.size(), threads, [&](std::size_t g) {
    MatchConfig cfg{length, p_noise, payoffs, DeriveSeed(master_seed, {NoiseKey(p_noise), g})};
    const MatchResult r = RunMatch(strategy.make, strategy.make, cfg);
    per_game[g].resize(length);
    for (int t = 0; t < length; ++t) {
      per_game[g][t] = 0.5 * (r.rounds[t].payoff_a + r.rounds[t].payoff_b);
    }
  });

  SelfPlayResult result;
  result.strategy = strategy.name;
  result.p_noise = p_noise;
  result.games = games;
  result.curve.assign(length, 0.0);
  for (const auto& g : per_game) {
    for (int t = 0; t < length; ++t) result.curve[t] += g[t] / games;
  }
  double total = 0.0;
  double last = 0.0;
  for (int t = 0; t < length; ++t) {
    total += result.curve[t];
    if (t >= length / 2) last += result.curve[t];
  }
  result.mean = total / length;
  result.last_half_mean = last / (length - length / 2);
  result.bench_cooperate = NoisyMutualCooperationPayoff(payoffs, p_noise);
  result.bench_random = RandomPlayPayoff(payoffs);
  result.bench_defect = NoisyMutualDefectionPayoff(payoffs, p_noise);
  return result;
}

std::vector<double> BinCurve(const std::vector<double>& curve, int width) {
  std::vector<double> bins;
  for (std::size_t start = 0; start < curve.size(); start += width) {
    const std::size_t end = std::min(curve.size(), start + width);
    double acc = 0.0;
    for (std::size_t t = start; t < end; ++t) acc += curve[t];
    bins.push_back(acc / static_cast<double>(end - start));
  }
  return bins;
}

nlohmann::json ToJson(const SelfPlayResult& r) {
  return {{"strategy", r.strategy},
          {"noise", r.p_noise},
          {"games", r.games},
          {"length", r.curve.size()},
          {"mean", r.mean},
          {"last_half_mean", r.last_half_mean},
          {"bench_cooperate", r.bench_cooperate},
          {"bench_random", r.bench_random},
          {"bench_defect", r.bench_defect}};
}

void WriteCurveCsv(const SelfPlayResult& result, std::ostream& out) {
  out << "round,mean_payoff\n";
  for (std::size_t t = 0; t < result.curve.size(); ++t) {
    out << t + 1 << ',' << Fmt(result.curve[t]) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Audits

SelfCooperationAudit AuditSelfCooperating(const StrategySpec& strategy, double p_noise,
                                          const AuditOptions& options) {
  ValidateNoise(p_noise);
  const auto steady =
      SteadyStateBatch({{strategy.make, strategy.make}}, p_noise, options, 0xA0 + NoiseKey(p_noise));
  SelfCooperationAudit audit;
  audit.strategy = strategy.name;
  audit.p_noise = p_noise;
  audit.measured = 0.5 * (steady[0].a + steady[0].b);
  audit.benchmark = NoisyMutualCooperationPayoff(options.payoffs, p_noise);
  audit.threshold = audit.benchmark - options.Slack(p_noise);
  audit.pass = audit.measured >= audit.threshold;
  return audit;
}

std::vector<StrategySpec> DefaultProbeSet(const PayoffParams& payoffs) {
  std::vector<StrategySpec> probes;
  for (int first = 1; first >= 0; --first) {
    for (int mask = 15; mask >= 0; --mask) {
      std::array<double, 4> p{};
      for (int s = 0; s < 4; ++s) p[s] = (mask >> (3 - s)) & 1;
      probes.push_back(MemOne(MemOneVector(p, first)));
    }
  }
  for (double chi : {1.5, 2.0, 3.0}) {
    const double phi = 0.5 * ZdMaxPhi(chi, payoffs);
    auto spec = ZdExtortionSpec(chi, phi);
    spec.make = [chi, phi](const GameContext& ctx) {
      return std::make_unique<MemOneStrategy>(ZdExtortion(chi, phi, ctx.payoffs));
    };
    probes.push_back(std::move(spec));
  }
  return probes;
}

CooperationInducingAudit AuditCooperationInducing(const StrategySpec& strategy, double p_noise,
                                                  const std::vector<StrategySpec>& probes,
                                                  const AuditOptions& options) {
  ValidateNoise(p_noise);
  if (probes.empty()) throw ConfigError("probe set must not be empty");
  std::vector<std::pair<StrategyFactory, StrategyFactory>> pairs;
  for (const auto& probe : probes) pairs.emplace_back(probe.make, strategy.make);
  const auto steady = SteadyStateBatch(pairs, p_noise, options, 0xB0 + NoiseKey(p_noise));

  CooperationInducingAudit audit;
  audit.strategy = strategy.name;
  audit.p_noise = p_noise;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < probes.size(); ++i) {
    audit.probes.push_back({probes[i].name, steady[i].a, steady[i].b});
    best = std::max(best, steady[i].a);
  }
  // Among (near-)tied best responses, the opponent may pick any; judge by the
  // one that is best for the strategy.
  std::size_t chosen = probes.size();
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (steady[i].a < best - options.tie_tolerance) continue;
    if (chosen == probes.size() || steady[i].b > steady[chosen].b) chosen = i;
  }
  const PayoffParams& u = options.payoffs;
  const double slack = u.NoiseSlope() * p_noise;
  audit.best_probe = probes[chosen].name;
  audit.best_probe_payoff = best;
  audit.strategy_payoff_vs_best = steady[chosen].b;
  audit.lower_bound = u.r() - slack - options.Slack(p_noise);
  audit.upper_bound = u.r() + slack + options.Slack(p_noise);
  audit.pass = audit.strategy_payoff_vs_best >= audit.lower_bound && best <= audit.upper_bound;
  return audit;
}

std::vector<MemOneOpponent> DefaultMemOneOpponents(const PayoffParams& payoffs,
                                                   bool include_extortionate) {
  std::vector<MemOneOpponent> opponents = {
      {"cooperator", MemOneVector({1, 1, 1, 1}, 1)},
      {"defector", MemOneVector({0, 0, 0, 0}, 0)},
      {"random:0.5", MemOneVector({0.5, 0.5, 0.5, 0.5}, 0.5)},
      {"tft", TftVector()},
      {"pavlov", PavlovVector()},
      {"gtft", GenerousTftVector(payoffs)},
      {"memone:0.9,0.6,0.3,0.1", MemOneVector({0.9, 0.6, 0.3, 0.1}, 0.5)},
      {"memone:0.7,0.2,0.8,0.4", MemOneVector({0.7, 0.2, 0.8, 0.4}, 0.5)},
  };
  if (include_extortionate) {
    opponents.push_back({"zd:chi=3,phi=1/26", ZdExtortion(3.0, 1.0 / 26.0, payoffs), true});
  }
  return opponents;
}

AdaptiveAudit AuditAdaptive(const StrategySpec& strategy,
                            const std::vector<MemOneOpponent>& opponents, double p_noise,
                            const AuditOptions& options) {
  ValidateNoise(p_noise);
  std::vector<std::pair<StrategyFactory, StrategyFactory>> pairs;
  for (const auto& opp : opponents) {
    const MemOneVector v = opp.vector;
    pairs.emplace_back(strategy.make, [v](const GameContext&) {
      return std::make_unique<MemOneStrategy>(v);
    });
  }
  const auto steady = SteadyStateBatch(pairs, p_noise, options, 0xC0 + NoiseKey(p_noise));

  AdaptiveAudit audit;
  audit.strategy = strategy.name;
  audit.p_noise = p_noise;
  audit.pass = true;
  audit.pass_all = true;
  for (std::size_t i = 0; i < opponents.size(); ++i) {
    const Vec4 opp_seen = NoiseTransform(opponents[i].vector.AsSeenByOpponent(), p_noise);
    const double optimum =
        CornerOracle(opp_seen, kCC, kGammaFuture, options.payoffs, p_noise).value;
    AdaptiveGap gap{opponents[i].name, steady[i].a, optimum, optimum - steady[i].a,
                    opponents[i].extortionate, false};
    gap.pass = gap.gap <= options.Slack(p_noise);
    if (!gap.extortionate) audit.pass = audit.pass && gap.pass;
    audit.pass_all = audit.pass_all && gap.pass;
    audit.gaps.push_back(gap);
  }
  return audit;
}

nlohmann::json ToJson(const SelfCooperationAudit& a) {
  return {{"audit", "self-cooperating"}, {"strategy", a.strategy}, {"noise", a.p_noise},
          {"measured", a.measured},      {"benchmark", a.benchmark}, {"threshold", a.threshold},
          {"pass", a.pass}};
}

nlohmann::json ToJson(const CooperationInducingAudit& a) {
  auto probes = nlohmann::json::array();
  for (const auto& p : a.probes) {
    probes.push_back({{"probe", p.probe},
                      {"probe_payoff", p.probe_payoff},
                      {"strategy_payoff", p.strategy_payoff}});
  }
  return {{"audit", "cooperation-inducing"},
          {"strategy", a.strategy},
          {"noise", a.p_noise},
          {"best_probe", a.best_probe},
          {"best_probe_payoff", a.best_probe_payoff},
          {"strategy_payoff_vs_best", a.strategy_payoff_vs_best},
          {"lower_bound", a.lower_bound},
          {"upper_bound", a.upper_bound},
          {"pass", a.pass},
          {"probes", std::move(probes)}};
}

nlohmann::json ToJson(const AdaptiveAudit& a) {
  auto gaps = nlohmann::json::array();
  for (const auto& g : a.gaps) {
    gaps.push_back({{"opponent", g.opponent},
                    {"achieved", g.achieved},
                    {"optimum", g.optimum},
                    {"gap", g.gap},
                    {"extortionate", g.extortionate},
                    {"pass", g.pass}});
  }
  return {{"audit", "adaptive"},
          {"strategy", a.strategy},
          {"noise", a.p_noise},
          {"pass", a.pass},
          {"pass_all", a.pass_all},
          {"gaps", std::move(gaps)}};
}

}  // namespace ipd
