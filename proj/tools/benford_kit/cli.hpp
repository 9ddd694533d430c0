#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace benford_kit {

/// Process exit codes.
enum ExitCode : int {
    kConforms = 0,
    kInternal = 1,
    kUsage = 2, // bad flags, unreadable or unwritable files, parse errors, no sampler
    kViolates = 3,
    kNumeric = 4, // tolerance not certified, or no classifiable values
};

/// Runs one command. `args` excludes the program name. Reports go to `out`
/// unless --out redirects them; diagnostics go to `err`. An input path of
/// "-" reads standard input.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace benford_kit
