#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qpeano::cli {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitUsage = 64;  // unknown subcommand or bad flags
constexpr int kExitData = 65;   // malformed JSON input

/// Name of the environment variable holding the path of a JSON config file
/// ({"rel_tol": ..., "max_terms": ...}); explicit flags take precedence.
inline constexpr const char* kConfigEnv = "QPEANO_CONFIG";

/// Runs one subcommand.  `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace qpeano::cli
