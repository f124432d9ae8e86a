#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ampm::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kUsage = 2,
    kNumeric = 3,
};

struct Environment {
    /// ANSI styling of table headers; off when AMPM_NO_COLOR is set or stdout is not a tty.
    bool color = false;
};

/// Runs one command line (args excludes the program name). Data goes to
/// `out`, diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env = {});

} // namespace ampm::cli
