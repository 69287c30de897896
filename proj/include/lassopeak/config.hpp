#pragma once

#include <string>
#include <string_view>

#include "lassopeak/simulation.hpp"

namespace lassopeak {

// Plain-text experiment configuration: one `key = value` per line,
// `#` starts a comment, blank lines ignored. Unknown keys are rejected.
// Missing keys keep the SimConfig defaults. n_grid accepts either a
// comma list (`10,20,50`) or a range `start:stop:step`.
SimConfig parse_config(std::string_view text);

SimConfig parse_config_file(const std::string& path);

}  // namespace lassopeak
