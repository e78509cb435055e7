#pragma once

#include <iosfwd>
#include <string>

#include "goldenmap/scalar.hpp"

namespace gm::cli {

// Exact value of "-2", "-1/2", "-0.5" or "-5e-1".
Rational parse_rational(const std::string& text);

// Runs one subcommand. Returns 0 on success, 1 on a failed assertion or
// computation, 2 on a usage error.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace gm::cli
