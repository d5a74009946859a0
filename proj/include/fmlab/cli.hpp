#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fmlab {

// Runs one CLI invocation. `args` excludes the program name; `in` backs the
// '-' file argument. Returns 0 on success, 1 on a domain error, 2 on a
// usage error.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace fmlab
