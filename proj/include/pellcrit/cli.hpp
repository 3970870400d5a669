#pragma once

// Command-line front end.  Records go to `out` one per line; diagnostics go
// to `err`.

#include <iosfwd>
#include <string>
#include <vector>

namespace pellcrit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInconsistent = 3;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pellcrit
