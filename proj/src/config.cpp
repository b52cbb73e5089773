#include "ipd/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "ipd/registry.hpp"

namespace ipd {
namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "pool",     "evaluate", "length",   "repetitions", "noise_levels", "master_seed",
    "threads",  "payoff_t", "payoff_r", "payoff_p",    "payoff_s",     "output_dir",
    "format",
};

std::string Trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> Words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

double ToDouble(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double x = std::strtod(value.c_str(), &end);
  if (value.empty() || *end != '\0') {
    throw ConfigError("'" + key + "': expected a number, got '" + value + "'");
  }
  return x;
}

long long ToInt(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const long long x = std::strtoll(value.c_str(), &end, 10);
  if (value.empty() || *end != '\0') {
    throw ConfigError("'" + key + "': expected an integer, got '" + value + "'");
  }
  return x;
}

void CheckKey(const std::string& key, const std::string& where) {
  if (!kKnownKeys.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

}  // namespace

Settings ParseSettings(std::string_view text, const std::string& source) {
  Settings settings;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = Trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = source + ":" + std::to_string(line_no);
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = Trim(std::string_view(body).substr(0, eq));
    CheckKey(key, where);
    settings[key] = Trim(std::string_view(body).substr(eq + 1));
  }
  return settings;
}

Settings LoadSettingsFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return ParseSettings(text.str(), path);
}

void ApplyOverride(Settings& settings, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
  }
  const std::string key = Trim(assignment.substr(0, eq));
  CheckKey(key, "override");
  settings[key] = Trim(assignment.substr(eq + 1));
}

TournamentConfig MakeTournamentConfig(const Settings& s) {
  TournamentConfig cfg;
  for (const auto& [key, value] : s) CheckKey(key, "config");
  auto get = [&](const char* key) -> const std::string* {
    const auto it = s.find(key);
    return it == s.end() ? nullptr : &it->second;
  };
  if (auto* v = get("pool")) cfg.pool = Words(*v);
  if (cfg.pool.empty()) cfg.pool = DefaultPoolNames();
  if (auto* v = get("evaluate")) cfg.evaluate = Words(*v);
  if (auto* v = get("length")) cfg.length = static_cast<int>(ToInt("length", *v));
  if (auto* v = get("repetitions")) {
    cfg.repetitions = static_cast<int>(ToInt("repetitions", *v));
  }
  if (auto* v = get("noise_levels")) {
    cfg.noise_levels.clear();
    for (const auto& w : Words(*v)) cfg.noise_levels.push_back(ToDouble("noise_levels", w));
  }
  if (auto* v = get("master_seed")) {
    cfg.master_seed = static_cast<std::uint64_t>(ToInt("master_seed", *v));
  }
  if (auto* v = get("threads")) cfg.threads = static_cast<int>(ToInt("threads", *v));
  const PayoffParams d;
  auto payoff = [&](const char* key, double fallback) {
    const auto* v = get(key);
    return v ? ToDouble(key, *v) : fallback;
  };
  cfg.payoffs = PayoffParams(payoff("payoff_t", d.t()), payoff("payoff_r", d.r()),
                             payoff("payoff_p", d.p()), payoff("payoff_s", d.s()));
  cfg.Validate();
  return cfg;
}

std::string DefaultOutputDir() {
  const char* env = std::getenv(kOutputDirEnv);
  return env && *env ? env : ".";
}

}  // namespace ipd
