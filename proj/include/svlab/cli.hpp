#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace svlab::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Runs one subcommand. Exit status: 0 success, 1 domain error, 2 usage error.
/// CSV and mesh output go to `out`; the parameter header and errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace svlab::cli
