// ipd: command-line front end for matches, tournaments, self-play and audits.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ipd/config.hpp"
#include "ipd/harness.hpp"
#include "ipd/match.hpp"
#include "ipd/registry.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitAuditFailed = 2;

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_dir;
  std::string format = "csv";
  std::optional<int> threads;
};

std::string Num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

std::string Csv(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

ipd::Settings LoadSettings(const Common& c) {
  ipd::Settings s;
  if (!c.config_path.empty()) s = ipd::LoadSettingsFile(c.config_path);
  for (const auto& o : c.overrides) ipd::ApplyOverride(s, o);
  return s;
}

// Flag > file/override > default.
template <typename T>
T Pick(const std::optional<T>& flag, const ipd::Settings& s, const char* key, T fallback,
       T (*parse)(const std::string&)) {
  if (flag) return *flag;
  if (auto it = s.find(key); it != s.end()) return parse(it->second);
  return fallback;
}

int ParseInt(const std::string& v) {
  try {
    std::size_t used = 0;
    const int x = std::stoi(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw ipd::ConfigError("expected an integer, got '" + v + "'");
}

std::filesystem::path OutputDir(const Common& c, const ipd::Settings& s) {
  std::string dir = c.output_dir;
  if (dir.empty()) {
    auto it = s.find("output_dir");
    dir = it != s.end() ? it->second : ipd::DefaultOutputDir();
  }
  std::filesystem::create_directories(dir);
  return dir;
}

std::string Format(const Common& c, const ipd::Settings& s, bool format_given) {
  std::string f = c.format;
  if (!format_given) {
    if (auto it = s.find("format"); it != s.end()) f = it->second;
  }
  if (f != "csv" && f != "json") throw ipd::ConfigError("format must be csv or json");
  return f;
}

int Threads(const Common& c, const ipd::Settings& s) {
  const int t = Pick<int>(c.threads, s, "threads", 1, ParseInt);
  if (t < 1) throw ipd::ConfigError("threads must be >= 1");
  return t;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  std::cout << "wrote " << path.string() << '\n';
}

std::string Dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

ipd::PayoffParams Payoffs(const ipd::Settings& s) {
  ipd::Settings only;
  for (const char* k : {"payoff_t", "payoff_r", "payoff_p", "payoff_s"}) {
    if (auto it = s.find(k); it != s.end()) only[k] = it->second;
  }
  only["pool"] = "tft";
  return ipd::MakeTournamentConfig(only).payoffs;
}

// ---------------------------------------------------------------------------

struct MatchArgs {
  std::string a;
  std::string b;
  int length = 400;
  double noise = 0.0;
  std::uint64_t seed = 1;
  bool trace = false;
};

int RunMatchCommand(const Common& c, bool format_given, const MatchArgs& m) {
  const auto settings = LoadSettings(c);
  const auto a = ipd::ParseStrategy(m.a);
  const auto b = ipd::ParseStrategy(m.b);
  if (m.length < 1) throw ipd::ConfigError("length must be >= 1");
  ipd::ValidateNoise(m.noise);
  ipd::MatchConfig cfg{m.length, m.noise, Payoffs(settings), m.seed};

  std::ostringstream trace_lines;
  auto tracer = [&](const char* player) -> ipd::TraceFn {
    if (!m.trace) return {};
    return [&trace_lines, player](const nlohmann::json& event) {
      nlohmann::json line = event;
      line["player"] = player;
      trace_lines << line.dump() << '\n';
    };
  };
  const ipd::MatchResult result = ipd::RunMatch(a.make, b.make, cfg, tracer("a"), tracer("b"));

  std::cout << "avg payoffs: " << a.name << ' ' << Num(result.avg_payoff_a) << " / " << b.name
            << ' ' << Num(result.avg_payoff_b) << '\n';
  if (m.trace) std::cout << trace_lines.str();

  const auto dir = OutputDir(c, settings);
  if (Format(c, settings, format_given) == "json") {
    nlohmann::json j = ipd::ToJson(result, true);
    j["a"] = a.name;
    j["b"] = b.name;
    j["noise"] = m.noise;
    WriteFile(dir / "match.json", Dump(j));
  } else {
    std::ostringstream out;
    ipd::WriteRoundsCsv(result, out);
    WriteFile(dir / "match.csv", out.str());
  }
  if (m.trace) WriteFile(dir / "trace.jsonl", trace_lines.str());
  return kExitOk;
}

int RunTournamentCommand(const Common& c, bool format_given) {
  const auto settings = LoadSettings(c);
  auto cfg = ipd::MakeTournamentConfig(settings);
  cfg.threads = Threads(c, settings);
  const auto report = ipd::RunTournament(cfg);

  for (const auto& e : report.entries) {
    std::printf("noise=%-5s rank=%2d %-28s mean=%s stderr=%s\n", Csv(e.noise).c_str(), e.rank,
                e.strategy.c_str(), Num(e.mean).c_str(), Num(e.std_error).c_str());
  }
  std::fflush(stdout);
  const auto dir = OutputDir(c, settings);
  if (Format(c, settings, format_given) == "json") {
    WriteFile(dir / "tournament.json", Dump(ipd::ToJson(report)));
  } else {
    std::ostringstream out;
    ipd::WriteCsv(report, out);
    WriteFile(dir / "tournament.csv", out.str());
  }
  return kExitOk;
}

struct SelfPlayArgs {
  std::string strategy;
  double noise = 0.05;
  int games = 100;
  int length = 1000;
  std::optional<std::uint64_t> seed;
};

int RunSelfPlayCommand(const Common& c, bool format_given, const SelfPlayArgs& a) {
  const auto settings = LoadSettings(c);
  const auto spec = ipd::ParseStrategy(a.strategy);
  const std::uint64_t seed =
      a.seed ? *a.seed
             : static_cast<std::uint64_t>(Pick<int>(std::nullopt, settings, "master_seed", 1,
                                                    ParseInt));
  const auto r = ipd::SelfPlay(spec, a.noise, a.games, a.length, Payoffs(settings), seed,
                               Threads(c, settings));
  std::cout << spec.name << " self-play: mean " << Num(r.mean) << ", last half "
            << Num(r.last_half_mean) << " (cooperate " << Num(r.bench_cooperate) << ", random "
            << Num(r.bench_random) << ", defect " << Num(r.bench_defect) << ")\n";
  const auto dir = OutputDir(c, settings);
  if (Format(c, settings, format_given) == "json") {
    nlohmann::json j = ipd::ToJson(r);
    j["curve"] = r.curve;
    WriteFile(dir / "selfplay.json", Dump(j));
  } else {
    std::ostringstream out;
    ipd::WriteCurveCsv(r, out);
    WriteFile(dir / "selfplay.csv", out.str());
  }
  return kExitOk;
}

struct AuditArgs {
  std::string strategy;
  std::string which = "all";
  std::vector<double> noise;
  int length = 2000;
  int seeds = 20;
  double tolerance = 0.1;
  double noise_slope = 3.0;
  std::optional<std::uint64_t> seed;
};

int RunAuditCommand(const Common& c, bool format_given, const AuditArgs& a) {
  const auto settings = LoadSettings(c);
  const auto spec = ipd::ParseStrategy(a.strategy);
  ipd::AuditOptions opt;
  opt.length = a.length;
  opt.seeds = a.seeds;
  opt.tolerance = a.tolerance;
  opt.noise_slope = a.noise_slope;
  opt.payoffs = Payoffs(settings);
  opt.threads = Threads(c, settings);
  opt.master_seed =
      a.seed ? *a.seed
             : static_cast<std::uint64_t>(Pick<int>(std::nullopt, settings, "master_seed", 1,
                                                    ParseInt));
  if (opt.length < 2 || opt.seeds < 1) throw ipd::ConfigError("need length >= 2 and seeds >= 1");
  for (double p : a.noise) ipd::ValidateNoise(p);

  const bool all = a.which == "all";
  auto levels = [&](std::vector<double> fallback) { return a.noise.empty() ? fallback : a.noise; };

  nlohmann::json results = nlohmann::json::array();
  std::ostringstream csv;
  csv << "audit,strategy,noise,pass,value,bound\n";
  bool ok = true;
  auto report = [&](const char* audit, double p, bool pass, double value, double bound) {
    ok = ok && pass;
    csv << audit << ',' << spec.name << ',' << Csv(p) << ',' << (pass ? "pass" : "fail") << ','
        << Csv(value) << ',' << Csv(bound) << '\n';
    std::printf("%-20s noise=%-5s %s  value=%s bound=%s\n", audit, Csv(p).c_str(),
                pass ? "PASS" : "FAIL", Num(value).c_str(), Num(bound).c_str());
  };

  if (all || a.which == "self") {
    for (double p : levels({0.05})) {
      const auto r = ipd::AuditSelfCooperating(spec, p, opt);
      report("self-cooperating", p, r.pass, r.measured, r.threshold);
      results.push_back(ipd::ToJson(r));
    }
  }
  if (all || a.which == "inducing") {
    const auto probes = ipd::DefaultProbeSet(opt.payoffs);
    for (double p : levels({0.0, 0.05})) {
      const auto r = ipd::AuditCooperationInducing(spec, p, probes, opt);
      report("cooperation-inducing", p, r.pass, r.strategy_payoff_vs_best, r.lower_bound);
      results.push_back(ipd::ToJson(r));
    }
  }
  if (all || a.which == "adaptive") {
    const auto opponents = ipd::DefaultMemOneOpponents(opt.payoffs, true);
    for (double p : levels({0.05})) {
      const auto r = ipd::AuditAdaptive(spec, opponents, p, opt);
      double worst = 0.0;
      for (const auto& g : r.gaps) {
        if (!g.extortionate) worst = std::max(worst, g.gap);
      }
      report("adaptive", p, r.pass, worst, opt.Slack(p));
      results.push_back(ipd::ToJson(r));
    }
  }
  std::fflush(stdout);

  const auto dir = OutputDir(c, settings);
  if (Format(c, settings, format_given) == "json") {
    WriteFile(dir / "audit.json", Dump(nlohmann::json{{"strategy", spec.name},
                                                      {"pass", ok},
                                                      {"results", std::move(results)}}));
  } else {
    WriteFile(dir / "audit.csv", csv.str());
  }
  return ok ? kExitOk : kExitAuditFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noisy iterated prisoner's dilemma: matches, tournaments, self-play, audits"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--config", common.config_path, "Settings file (key = value lines)");
  app.add_option("--set", common.overrides, "Override a setting, key=value (repeatable)");
  app.add_option("--output-dir", common.output_dir,
                 std::string("Output directory (default: $") + ipd::kOutputDirEnv + " or .)");
  auto* format_opt = app.add_option("--format", common.format, "Output format")
                         ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);

  MatchArgs match;
  auto* match_cmd = app.add_subcommand("match", "Play one match and print average payoffs");
  match_cmd->add_option("--a", match.a, "First strategy")->required();
  match_cmd->add_option("--b", match.b, "Second strategy")->required();
  match_cmd->add_option("--length", match.length, "Rounds")->capture_default_str();
  match_cmd->add_option("--noise", match.noise, "Noise probability")->capture_default_str();
  match_cmd->add_option("--seed", match.seed, "Seed")->capture_default_str();
  match_cmd->add_flag("--trace", match.trace, "Print strategy trace events as JSON lines");

  auto* tournament_cmd = app.add_subcommand("tournament", "Round-robin tournament");

  SelfPlayArgs selfplay;
  auto* selfplay_cmd = app.add_subcommand("selfplay", "Self-play payoff curve");
  selfplay_cmd->add_option("--strategy", selfplay.strategy, "Strategy")->required();
  selfplay_cmd->add_option("--noise", selfplay.noise, "Noise probability")->capture_default_str();
  selfplay_cmd->add_option("--games", selfplay.games, "Games")->capture_default_str();
  selfplay_cmd->add_option("--length", selfplay.length, "Rounds per game")->capture_default_str();
  selfplay_cmd->add_option("--seed", selfplay.seed, "Master seed");

  AuditArgs audit;
  auto* audit_cmd = app.add_subcommand("audit", "Desiderata audits");
  audit_cmd->add_option("--strategy", audit.strategy, "Strategy")->required();
  audit_cmd->add_option("--which", audit.which, "Audit to run")
      ->check(CLI::IsMember({"self", "inducing", "adaptive", "all"}))
      ->capture_default_str();
  audit_cmd->add_option("--noise", audit.noise,
                        "Noise levels (default: self 0.05, inducing 0 0.05, adaptive 0.05)");
  audit_cmd->add_option("--length", audit.length, "Rounds per match")->capture_default_str();
  audit_cmd->add_option("--seeds", audit.seeds, "Matches per pairing")->capture_default_str();
  audit_cmd->add_option("--tolerance", audit.tolerance, "Base slack")->capture_default_str();
  audit_cmd->add_option("--noise-slope", audit.noise_slope, "Extra slack per unit noise")
      ->capture_default_str();
  audit_cmd->add_option("--seed", audit.seed, "Master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const bool format_given = format_opt->count() > 0;
  try {
    if (*match_cmd) return RunMatchCommand(common, format_given, match);
    if (*tournament_cmd) return RunTournamentCommand(common, format_given);
    if (*selfplay_cmd) return RunSelfPlayCommand(common, format_given, selfplay);
    if (*audit_cmd) return RunAuditCommand(common, format_given, audit);
  } catch (const ipd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
