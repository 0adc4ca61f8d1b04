#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cwcsp::cli {

enum ExitCode {
    ok = 0,
    usage = 1,
    parse_error = 2,
    precondition = 3,
    resource_limit = 4,
    inconclusive = 5,
};

/// Runs one command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cwcsp::cli
