// Experiment configs shipped with the library. configs/<name>.json in the
// source tree holds the same documents.

#pragma once

#include <string>
#include <vector>

#include "lohe/experiments/config.hpp"

namespace lohe::experiments {

std::vector<std::string> builtin_config_names();

// Throws ConfigError for an unknown name.
json builtin_config(const std::string& name);

}  // namespace lohe::experiments
