#pragma once

// Verification of a realized algebra and its JSON report.

#include "starkernel/cli/spec_file.hpp"
#include "starkernel/realization.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace starkernel::cli {

/// Dual-constant entries with modulus at or below this are omitted from
/// reports and dumps.
inline constexpr double kReportChop = 1e-13;

struct ReportError {
    std::string kind; // "rank" or "contract"
    std::string message;
    std::optional<std::size_t> rank;
    std::optional<std::size_t> expected;
};

/// Residuals that could not be computed (after a solver failure) stay empty
/// and are written as null.
struct VerificationReport {
    std::string scheme;
    std::size_t dim = 0;
    std::optional<std::size_t> hilbert_dim;
    double pairing_weight = 1.0;
    double tolerance = 1e-10;
    std::optional<double> associativity;
    std::array<std::size_t, 4> associativity_worst{};
    std::optional<double> quantizer_closure;
    std::optional<double> duality;
    std::optional<double> kernel_recovery;
    /// Informational: min-norm dequantizers need not close.
    std::optional<double> dequantizer_closure;
    std::optional<StructureConstants> dual_constants;
    std::vector<std::string> warnings;
    std::optional<ReportError> error;
    bool passed = false;
};

struct Realization {
    VerificationReport report;
    std::optional<Scheme> scheme;
    std::optional<KernelTensor> kernel;
};

/// Runs regular_representation -> solve_dequantizers -> kernel_from_scheme
/// and fills every residual. Rank and contract failures are recorded in the
/// report rather than thrown.
Realization realize_spec(const AlgebraSpec &spec, double tolerance);

/// Sparse {j,k,l,re,im} triplets, entries with |C| <= chop omitted.
nlohmann::ordered_json constants_to_json(const StructureConstants &c, double chop = kReportChop);

/// Stable field set; see README "Report schema".
nlohmann::ordered_json to_json(const VerificationReport &r);

} // namespace starkernel::cli
