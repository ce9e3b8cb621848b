#pragma once

// Golden checks for the worked examples: each returns a JSON report with a
// "checks" object of named booleans and an overall "pass".

#include <cstdint>
#include <string>
#include <vector>

#include "json_io.hpp"

namespace twistlab::repro {

std::vector<std::string> sections();
// Throws std::invalid_argument for an unknown section.
io::json run(const std::string& section, std::uint64_t seed);

}  // namespace twistlab::repro
