#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pslset::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_failure = 3;

/// Environment variable naming the default output directory.
inline constexpr const char* output_dir_env = "PSLSET_OUT";

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pslset::cli
