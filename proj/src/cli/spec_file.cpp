#include "starkernel/cli/spec_file.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace starkernel::cli {

using nlohmann::json;

namespace {

// Source lines of the top-level keys and of each element of the top-level
// "constants" array, found by a lexical scan (nlohmann::json keeps no
// positions). Only consulted after the text has parsed successfully.
struct LineMap {
    std::map<std::string, std::size_t> keys;
    std::vector<std::size_t> constants;
};

LineMap scan_lines(std::string_view text) {
    LineMap out;
    std::size_t line = 1, depth = 0;
    std::string pending_key, current_key;
    std::size_t pending_line = 0;
    bool expect_element = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r')
            continue;
        if (expect_element && depth == 2 && c != ']') {
            out.constants.push_back(line);
            expect_element = false;
        }
        if (c == '"') {
            std::string s;
            for (++i; i < text.size() && text[i] != '"'; ++i) {
                if (text[i] == '\\' && i + 1 < text.size())
                    ++i;
                s += text[i];
            }
            if (depth == 1) {
                pending_key = std::move(s);
                pending_line = line;
            }
        } else if (c == ':' && depth == 1) {
            out.keys.emplace(pending_key, pending_line);
            current_key = pending_key;
        } else if (c == '{' || c == '[') {
            ++depth;
            if (depth == 2 && c == '[' && current_key == "constants")
                expect_element = true;
        } else if (c == '}' || c == ']') {
            if (depth > 0)
                --depth;
            if (depth == 1)
                expect_element = false;
        } else if (c == ',' && depth == 2 && current_key == "constants") {
            expect_element = true;
        }
    }
    return out;
}

class Diagnostics {
  public:
    Diagnostics(std::string_view text, std::string_view source)
        : lines_(scan_lines(text)), source_(source) {}

    [[noreturn]] void fail_key(const std::string &key, const std::string &what) const {
        const auto it = lines_.keys.find(key);
        throw ParseError(key + ": " + what,
                         it == lines_.keys.end() ? source_ : at(it->second));
    }

    [[noreturn]] void fail_entry(std::size_t index, const std::string &field,
                                 const std::string &what) const {
        const std::string loc =
            index < lines_.constants.size() ? at(lines_.constants[index]) : source_;
        throw ParseError("constants[" + std::to_string(index) + "]" +
                             (field.empty() ? "" : "." + field) + ": " + what,
                         loc);
    }

    [[noreturn]] void fail(const std::string &what) const { throw ParseError(what, source_); }

  private:
    std::string at(std::size_t line) const { return source_ + " line " + std::to_string(line); }

    LineMap lines_;
    std::string source_;
};

std::size_t read_index(const json &entry, const char *field, std::size_t index,
                       const Diagnostics &diag) {
    if (!entry.contains(field))
        diag.fail_entry(index, field, "missing");
    const json &v = entry.at(field);
    if (!v.is_number_integer())
        diag.fail_entry(index, field, "must be an integer, got " + v.dump());
    if (v.is_number_unsigned())
        return v.get<std::size_t>();
    const auto s = v.get<std::int64_t>();
    if (s < 0)
        diag.fail_entry(index, field, "must be nonnegative, got " + std::to_string(s));
    return static_cast<std::size_t>(s);
}

double read_real(const json &entry, const char *field, std::size_t index,
                 const Diagnostics &diag, bool required) {
    if (!entry.contains(field)) {
        if (required)
            diag.fail_entry(index, field, "missing");
        return 0.0;
    }
    const json &v = entry.at(field);
    if (!v.is_number())
        diag.fail_entry(index, field, "must be a number, got " + v.dump());
    return v.get<double>();
}

} // namespace

AlgebraSpec parse_spec(std::string_view text, std::string_view source) {
    const std::string src(source);
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        // Convert the byte offset into a line/column pair.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("malformed JSON at column " + std::to_string(col) + ": " + e.what(),
                         src + " line " + std::to_string(line));
    }
    const Diagnostics diag(text, source);
    if (!doc.is_object())
        diag.fail("top level must be a JSON object");
    static const std::set<std::string> allowed{"name", "dim", "pairing_weight", "constants"};
    for (const auto &[key, value] : doc.items())
        if (!allowed.contains(key))
            diag.fail_key(key, "unknown key (expected name, dim, pairing_weight, constants)");

    AlgebraSpec spec;
    if (doc.contains("name")) {
        if (!doc["name"].is_string() || doc["name"].get<std::string>().empty())
            diag.fail_key("name", "must be a nonempty string");
        spec.name = doc["name"].get<std::string>();
    }
    if (!doc.contains("dim"))
        diag.fail("missing key: dim");
    const json &dim_v = doc["dim"];
    if (!dim_v.is_number_integer() || (dim_v.is_number_integer() && dim_v.get<std::int64_t>() < 1))
        diag.fail_key("dim", "must be a positive integer, got " + dim_v.dump());
    const auto dim = dim_v.get<std::size_t>();
    if (dim > kMaxSpecDim)
        diag.fail_key("dim", std::to_string(dim) + " exceeds the supported maximum " +
                                 std::to_string(kMaxSpecDim));
    if (doc.contains("pairing_weight")) {
        const json &w = doc["pairing_weight"];
        if (!w.is_number() || !(w.get<double>() > 0.0) || !std::isfinite(w.get<double>()))
            diag.fail_key("pairing_weight", "must be a positive finite number, got " + w.dump());
        spec.pairing_weight = w.get<double>();
    }
    if (!doc.contains("constants"))
        diag.fail("missing key: constants");
    const json &list = doc["constants"];
    if (!list.is_array())
        diag.fail_key("constants", "must be an array of {j, k, l, re, im} objects");

    StructureConstants c(dim);
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
    static const std::set<std::string> entry_keys{"j", "k", "l", "re", "im"};
    for (std::size_t i = 0; i < list.size(); ++i) {
        const json &e = list[i];
        if (!e.is_object())
            diag.fail_entry(i, "", "must be an object, got " + e.dump());
        for (const auto &[key, value] : e.items())
            if (!entry_keys.contains(key))
                diag.fail_entry(i, key, "unknown field (expected j, k, l, re, im)");
        const std::size_t j = read_index(e, "j", i, diag);
        const std::size_t k = read_index(e, "k", i, diag);
        const std::size_t l = read_index(e, "l", i, diag);
        const std::string triplet =
            "(" + std::to_string(j) + "," + std::to_string(k) + "," + std::to_string(l) + ")";
        for (const auto &[field, value] : {std::pair{"j", j}, {"k", k}, {"l", l}})
            if (value >= dim)
                diag.fail_entry(i, field,
                                "index " + std::to_string(value) + " out of range for dim " +
                                    std::to_string(dim) + " in triplet " + triplet);
        if (!seen.emplace(j, k, l).second)
            diag.fail_entry(i, "", "duplicate triplet " + triplet);
        const double re = read_real(e, "re", i, diag, true);
        const double im = read_real(e, "im", i, diag, false);
        c(j, k, l) = Complex(re, im);
    }
    spec.constants = std::move(c);
    return spec;
}

std::string serialize_spec(const AlgebraSpec &spec, double chop) {
    const StructureConstants &c = spec.constants;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < c.dim(); ++j)
        for (std::size_t k = 0; k < c.dim(); ++k)
            for (std::size_t l = 0; l < c.dim(); ++l)
                if (const Complex v = c(j, k, l); std::abs(v) > chop)
                    list.push_back(
                        {{"j", j}, {"k", k}, {"l", l}, {"re", v.real()}, {"im", v.imag()}});
    nlohmann::ordered_json doc = {{"name", spec.name}, {"dim", c.dim()}};
    if (spec.pairing_weight != 1.0)
        doc["pairing_weight"] = spec.pairing_weight;
    doc["constants"] = std::move(list);

    // One constant per line keeps diffs readable and diagnostics line-accurate.
    std::ostringstream os;
    os << "{\n  \"name\": " << doc["name"].dump() << ",\n  \"dim\": " << c.dim() << ",\n";
    if (doc.contains("pairing_weight"))
        os << "  \"pairing_weight\": " << doc["pairing_weight"].dump() << ",\n";
    os << "  \"constants\": [";
    for (std::size_t i = 0; i < doc["constants"].size(); ++i)
        os << (i == 0 ? "\n    " : ",\n    ") << doc["constants"][i].dump();
    os << (doc["constants"].empty() ? "]\n}\n" : "\n  ]\n}\n");
    return os.str();
}

AlgebraSpec read_spec_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open spec file", path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str(), path.string());
}

} // namespace starkernel::cli
