#ifndef IPD_CONFIG_HPP_
#define IPD_CONFIG_HPP_

#include <map>
#include <string>
#include <string_view>

#include "ipd/harness.hpp"

namespace ipd {

// Flat key/value settings. One `key = value` per line, '#' starts a comment.
// List values (pool, evaluate, noise_levels) are whitespace-separated.
using Settings = std::map<std::string, std::string>;

Settings ParseSettings(std::string_view text, const std::string& source = "<string>");

// Throws ConfigError if the file cannot be read or parsed.
Settings LoadSettingsFile(const std::string& path);

// Applies a single "key=value" override on top of `settings`.
void ApplyOverride(Settings& settings, std::string_view assignment);

// Builds a tournament config from settings; keys that are not set keep their
// defaults. Unknown keys are rejected.
TournamentConfig MakeTournamentConfig(const Settings& settings);

// Output directory used when neither --output-dir nor `output_dir` is given:
// $IPD_OUTPUT_DIR if set, else ".".
std::string DefaultOutputDir();

inline constexpr const char* kOutputDirEnv = "IPD_OUTPUT_DIR";

}  // namespace ipd

#endif  // IPD_CONFIG_HPP_
