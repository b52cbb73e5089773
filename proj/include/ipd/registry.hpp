#ifndef IPD_REGISTRY_HPP_
#define IPD_REGISTRY_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "ipd/strategy.hpp"

namespace ipd {

// Resolves a registry name to a strategy recipe. Accepted forms:
//   cooperator, defector, random[:q], tft, tf2t, gtft[:g], ctft, pavlov, grim,
//   memone:pCC,pCD,pDC,pDD[;first=f], zd:chi=X,phi=Y,
//   longterm-tft, iso, cooperate-iso, cooperate-iso-revert1,
//   cooperate-iso-revert2
// Composite names accept a ":" suffix with comma-separated flags: "freeze"
// (forgiveness counters ignore ISO rounds) and "rearm" (the switch rule may
// fire again after a revert). Throws ConfigError for anything else.
StrategySpec ParseStrategy(std::string_view name);

std::vector<StrategySpec> ParseStrategies(const std::vector<std::string>& names);

// The five strategies built around Longterm TFT and ISO.
std::vector<StrategySpec> CoreStrategies();

// Zoo plus core strategies; the default tournament pool.
std::vector<std::string> DefaultPoolNames();

}  // namespace ipd

#endif  // IPD_REGISTRY_HPP_
