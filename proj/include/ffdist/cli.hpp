#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ffdist::cli {

/// Exit codes shared by every subcommand.
enum Exit : int {
    ok = 0,
    failure = 1,  // verification mismatch or construction obstruction
    usage = 2,    // bad flags, violated precondition, malformed certificate
    budget = 3,   // search stopped before proving maximality
};

/// Runs `ffdist <args...>`; args exclude the program name.
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

}  // namespace ffdist::cli
