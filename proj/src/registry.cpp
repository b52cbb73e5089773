#include "ipd/registry.hpp"

#include <cstdlib>
#include <functional>
#include <map>
#include <string>

#include "ipd/composite.hpp"
#include "ipd/iso.hpp"
#include "ipd/longterm_tft.hpp"
#include "ipd/zoo.hpp"

namespace ipd {
namespace {

double ParseNumber(std::string_view text, std::string_view context) {
  const std::string s(text);
  char* end = nullptr;
  const double value = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ConfigError("bad number '" + s + "' in '" + std::string(context) + "'");
  }
  return value;
}

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

StrategySpec ParseMemOne(std::string_view args, std::string_view name) {
  double first = 1.0;
  std::string_view probs = args;
  if (const auto semi = args.find(';'); semi != std::string_view::npos) {
    probs = args.substr(0, semi);
    const std::string_view tail = args.substr(semi + 1);
    if (tail.substr(0, 6) != "first=") {
      throw ConfigError("memone: expected ';first=<p>' in '" + std::string(name) + "'");
    }
    first = ParseNumber(tail.substr(6), name);
  }
  const auto parts = Split(probs, ',');
  if (parts.size() != 4) {
    throw ConfigError("memone: need 4 probabilities in '" + std::string(name) + "'");
  }
  std::array<double, 4> p{};
  for (int i = 0; i < 4; ++i) p[i] = ParseNumber(parts[i], name);
  return MemOne(MemOneVector(p, first));
}

StrategySpec ParseZd(std::string_view args, std::string_view name) {
  double chi = -1.0;
  double phi = -1.0;
  for (std::string_view kv : Split(args, ',')) {
    const auto eq = kv.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("zd: expected key=value in '" + std::string(name) + "'");
    }
    const std::string_view key = kv.substr(0, eq);
    const double value = ParseNumber(kv.substr(eq + 1), name);
    if (key == "chi") {
      chi = value;
    } else if (key == "phi") {
      phi = value;
    } else {
      throw ConfigError("zd: unknown key '" + std::string(key) + "'");
    }
  }
  if (chi < 0.0 || phi < 0.0) {
    throw ConfigError("zd: both chi and phi are required in '" + std::string(name) + "'");
  }
  return ZdExtortionSpec(chi, phi);
}

}  // namespace

StrategySpec ParseStrategy(std::string_view name) {
  static const std::map<std::string, std::function<StrategySpec()>, std::less<>> kSimple = {
      {"cooperator", Cooperator},
      {"defector", Defector},
      {"random", [] { return RandomSpec(0.5); }},
      {"tft", Tft},
      {"tf2t", TitForTwoTatsSpec},
      {"gtft", [] { return GenerousTft(); }},
      {"ctft", ContriteTftSpec},
      {"pavlov", Pavlov},
      {"grim", GrimTriggerSpec},
      {"longterm-tft", LongtermTftSpec},
      {"iso", IsoSpec},
      {"cooperate-iso", CooperateIso},
      {"cooperate-iso-revert1", CooperateIsoRevert1},
      {"cooperate-iso-revert2", CooperateIsoRevert2},
  };
  if (auto it = kSimple.find(name); it != kSimple.end()) return it->second();

  const auto colon = name.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("unknown strategy '" + std::string(name) + "'");
  }
  const std::string_view head = name.substr(0, colon);
  const std::string_view args = name.substr(colon + 1);
  if (head == "random") {
    return RandomSpec(ParseNumber(args, name));
  }
  if (head == "gtft") return GenerousTft(ParseNumber(args, name));
  if (head == "memone") return ParseMemOne(args, name);
  if (head == "zd") return ParseZd(args, name);
  if (head == "cooperate-iso" || head == "cooperate-iso-revert1" ||
      head == "cooperate-iso-revert2") {
    CompositeOptions options;
    options.revert.on_loss = head != "cooperate-iso";
    options.revert.on_extortion = head == "cooperate-iso-revert2";
    for (std::string_view flag : Split(args, ',')) {
      if (flag == "freeze") {
        options.freeze_counters_in_iso = true;
      } else if (flag == "rearm") {
        options.rearm_after_revert = true;
      } else {
        throw ConfigError("unknown option '" + std::string(flag) + "' in '" +
                          std::string(name) + "'");
      }
    }
    return CompositeSpec(std::string(name), options);
  }
  throw ConfigError("unknown strategy '" + std::string(name) + "'");
}

std::vector<StrategySpec> ParseStrategies(const std::vector<std::string>& names) {
  std::vector<StrategySpec> specs;
  specs.reserve(names.size());
  for (const auto& n : names) specs.push_back(ParseStrategy(n));
  return specs;
}

std::vector<StrategySpec> CoreStrategies() {
  return {LongtermTftSpec(), IsoSpec(), CooperateIso(), CooperateIsoRevert1(),
          CooperateIsoRevert2()};
}

std::vector<std::string> DefaultPoolNames() {
  std::vector<std::string> names;
  for (const auto& s : BuiltinZoo()) names.push_back(s.name);
  for (const auto& s : CoreStrategies()) names.push_back(s.name);
  return names;
}

}  // namespace ipd
