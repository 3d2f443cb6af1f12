#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "degsheffer/identities.hpp"

namespace degsheffer::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;

/// Prefix of the environment variables consulted for settings,
/// e.g. DEGSHEFFER_ORDER.
inline constexpr std::string_view kEnvPrefix = "DEGSHEFFER_";

using EnvLookup = std::function<std::optional<std::string>(std::string_view name)>;

struct Environment {
    /// Defaults to std::getenv.
    EnvLookup env;
    /// Identity registry used by `verify`; defaults to Registry::standard().
    std::optional<Registry> registry;
};

/// Runs the command line (args excludes the program name) and returns the
/// process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& environment = {});

} // namespace degsheffer::cli
