#pragma once

// Subcommands of the starkernel tool. Each command returns its JSON report
// (written to stdout) and a short human summary (written to stderr).
//
// Exit codes: 0 success, 1 input error (unreadable or invalid spec, bad
// flags), 2 mathematical failure (a residual above tolerance, a rank error).

#include "starkernel/cli/spec_file.hpp"

#include <json.hpp>

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace starkernel::cli {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitMath = 2 };

struct Tolerances {
    /// Exact finite-algebra identities.
    double algebra = 1e-10;
    /// Truncated-operator identities (Moyal and tomographic composition laws).
    double moyal = 1e-6;
    /// Tomogram quadrature: normalization, oracle agreement, homogeneity.
    double tomo = 1e-3;
    /// Closed-form oracle comparisons (Moyal kernel trace, tomographic pairing).
    double kernel = 1e-4;
};

struct CommandOutput {
    int exit_code = kExitOk;
    /// JSON written to stdout; spec-format text for kernel/dualize.
    std::string stdout_text;
    std::string summary;
};

CommandOutput cmd_check(const AlgebraSpec &spec, const Tolerances &tol);
CommandOutput cmd_realize(const AlgebraSpec &spec, const Tolerances &tol,
                          const std::optional<std::filesystem::path> &out_dir);
CommandOutput cmd_kernel(const AlgebraSpec &spec, const Tolerances &tol);
CommandOutput cmd_dualize(const AlgebraSpec &spec, const Tolerances &tol);

struct DemoOptions {
    std::string name;
    Tolerances tol;
    std::size_t levels = 60;
    std::array<double, 4> s{1.0, 0.0, 0.0, 0.0};
    std::optional<std::filesystem::path> out_dir;
};

/// Throws ParseError for an unknown demo name.
CommandOutput cmd_demo(const DemoOptions &opts);

/// Parses "a,b,c,d" into four reals; throws ParseError otherwise.
std::array<double, 4> parse_s_vector(const std::string &text);

/// The full command line. Returns the process exit code.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace starkernel::cli
