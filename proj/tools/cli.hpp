#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace modelap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUnknownCommand = 1;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitGuard = 3;

const std::vector<std::string>& commands();

/// args excludes the program name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modelap::cli
