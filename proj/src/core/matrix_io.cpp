#include "starkernel/matrix_io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace starkernel {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_matrix(std::ostream &os, const std::string &name, const CMatrix &m) {
    if (name.empty() || name.find_first_of(" \t\n") != std::string::npos)
        throw ContractError("matrix name must be a single non-empty token: '" + name + "'");
    os << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j)
                os << ' ';
            os << format_real(m(i, j).real()) << ',' << format_real(m(i, j).imag());
        }
        os << '\n';
    }
}

void write_matrices(std::ostream &os, const std::vector<NamedMatrix> &mats) {
    for (const auto &nm : mats)
        write_matrix(os, nm.name, nm.matrix);
}

namespace {

double parse_real(std::string_view tok, std::size_t line) {
    double v = 0.0;
    // from_chars for double is available in libstdc++ 11.
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw ParseError("bad number '" + std::string(tok) + "'", "line " + std::to_string(line));
    return v;
}

} // namespace

std::vector<NamedMatrix> read_matrices(std::istream &is) {
    std::vector<NamedMatrix> out;
    std::string text;
    std::size_t line_no = 0;
    auto next_nonblank = [&](std::string &s) {
        while (std::getline(is, s)) {
            ++line_no;
            if (s.find_first_not_of(" \t\r") != std::string::npos)
                return true;
        }
        return false;
    };

    while (next_nonblank(text)) {
        std::istringstream header(text);
        std::string kw, name;
        long long rows = 0, cols = 0;
        if (!(header >> kw >> name >> rows >> cols) || kw != "matrix")
            throw ParseError("expected 'matrix <name> <rows> <cols>'",
                             "line " + std::to_string(line_no));
        if (rows <= 0 || cols <= 0)
            throw ParseError("matrix dimensions must be positive",
                             "line " + std::to_string(line_no));
        std::vector<Complex> data;
        data.reserve(static_cast<std::size_t>(rows * cols));
        for (long long i = 0; i < rows; ++i) {
            if (!next_nonblank(text))
                throw ParseError("unexpected end of input in matrix '" + name + "'",
                                 "line " + std::to_string(line_no));
            std::istringstream row(text);
            std::string pair;
            long long count = 0;
            while (row >> pair) {
                const auto comma = pair.find(',');
                if (comma == std::string::npos)
                    throw ParseError("expected re,im pair, got '" + pair + "'",
                                     "line " + std::to_string(line_no));
                const std::string_view sv(pair);
                data.emplace_back(parse_real(sv.substr(0, comma), line_no),
                                  parse_real(sv.substr(comma + 1), line_no));
                ++count;
            }
            if (count != cols)
                throw ParseError("expected " + std::to_string(cols) + " entries, got " +
                                     std::to_string(count),
                                 "line " + std::to_string(line_no));
        }
        out.push_back({name, CMatrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                                     std::move(data))});
    }
    return out;
}

} // namespace starkernel
