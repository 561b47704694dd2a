#pragma once

#include <ostream>
#include <string>

#include "heun/scalar.hpp"

namespace heun {

/// Parses "a", "a+bi", "a-bi", "bi"; throws std::invalid_argument.
Complex parse_complex(const std::string& text);

/// Runs one heun-connect command. Returns 0 on success, 1 on computational
/// failure (error name on err), 2 on usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace heun
