#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dephase/runner.hpp"

namespace dephase {

/// `key = value` lines, '#' starts a comment, blank lines ignored.
/// Keys are the CLI flag names with underscores in place of hyphens.
std::vector<std::pair<std::string, std::string>>
parse_config_file(const std::string& path);

/// Apply one typed key; throws ConfigError naming the offending field.
void apply_config_key(RunConfig& cfg, const std::string& key,
                      const std::string& value);

} // namespace dephase
