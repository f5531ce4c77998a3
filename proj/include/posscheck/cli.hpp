#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

namespace posscheck::cli {

// Exit statuses.
inline constexpr int kHolds = 0;
inline constexpr int kFails = 1;
inline constexpr int kUnknown = 2;  // also: nothing to check
inline constexpr int kUsage = 64;
inline constexpr int kDataError = 65;
inline constexpr int kNoInput = 66;
inline constexpr int kInternal = 70;

struct Environment {
    /// Value of POSSCHECK_EPSILON, if set.
    std::optional<std::string> epsilon;

    static Environment from_process();
};

/// Runs one command line. args[0] is the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err,
        const Environment& env = Environment::from_process());

}  // namespace posscheck::cli
