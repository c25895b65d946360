#pragma once

// Text dump format, one matrix per block:
//
//   matrix <name> <rows> <cols>
//   re,im re,im ...        (one line per row, 17 significant digits)
//
// Names are single tokens. Blank lines between blocks are ignored.

#include "starkernel/cmatrix.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace starkernel {

struct NamedMatrix {
    std::string name;
    CMatrix matrix;
};

/// Formats a double with 17 significant digits ("%.17g").
std::string format_real(double v);

void write_matrix(std::ostream &os, const std::string &name, const CMatrix &m);
void write_matrices(std::ostream &os, const std::vector<NamedMatrix> &mats);

/// Throws ParseError with a "line N" location on malformed input.
std::vector<NamedMatrix> read_matrices(std::istream &is);

} // namespace starkernel
