#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cosrays {

// Runs one CLI invocation (arguments without the program name). Returns 0 on
// success, 1 on domain errors and 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cosrays
