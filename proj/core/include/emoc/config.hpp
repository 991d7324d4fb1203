#pragma once

#include <string>
#include <string_view>

#include "emoc/embedding.hpp"

namespace emoc {

/// Reads an EmocConfig from JSON or from flat `key = value` lines (TOML
/// subset; values use JSON/TOML scalar and array syntax). Keys:
///   o_alphabet = ["ADD", ...]     o_mode = "binary" | "counts"
///   w_e, w_m, w_o, w_c = <number> passes = ["alpha", "dce", ...]
///   max_iterations = <int>
/// Unknown keys are rejected.
EmocConfig parse_config(std::string_view text);
EmocConfig load_config(const std::string& path);

}  // namespace emoc
