#pragma once

// Algebra spec files (JSON):
//
//   {
//     "name": "exotic",            optional, default "algebra"
//     "dim": 4,
//     "pairing_weight": 1,         optional, default 1
//     "constants": [ {"j": 0, "k": 0, "l": 0, "re": 1, "im": 0}, ... ]
//   }
//
// Indices are 0-based. "im" may be omitted (0). Entries not listed are 0.
// Unknown keys, out-of-range indices and duplicate (j,k,l) triplets are
// rejected with a ParseError naming the file line and the field.

#include "starkernel/algebra.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace starkernel::cli {

/// Largest accepted dimension; the dense tensor holds dim^3 entries and the
/// associativity scan costs dim^5.
inline constexpr std::size_t kMaxSpecDim = 64;

struct AlgebraSpec {
    std::string name = "algebra";
    double pairing_weight = 1.0;
    StructureConstants constants{1};
};

/// `source` names the input in diagnostics (a path or "<stdin>").
AlgebraSpec parse_spec(std::string_view text, std::string_view source = "<spec>");

/// Entries with |C| > chop are written, in (j,k,l) order. Doubles round-trip
/// exactly, so parse(serialize(s)) reproduces the tensor bit for bit when
/// chop = 0.
std::string serialize_spec(const AlgebraSpec &spec, double chop = 0.0);

/// Throws ParseError when the file cannot be read or parsed.
AlgebraSpec read_spec_file(const std::filesystem::path &path);

} // namespace starkernel::cli
