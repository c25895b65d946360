// Command-line contract: spec parsing and diagnostics, exit codes, report
// schema, artifact dumps, and the installed binary end to end.

#include "starkernel/catalog.hpp"
#include "starkernel/cli/commands.hpp"
#include "starkernel/cli/report.hpp"
#include "starkernel/cli/spec_file.hpp"
#include "starkernel/matrix_io.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace starkernel;
using namespace starkernel::cli;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const fs::path kFixtures = STARKERNEL_FIXTURES_DIR;
const fs::path kBinary = STARKERNEL_BINARY;

std::string fixture(const std::string &name) { return (kFixtures / name).string(); }

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "starkernel");
    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string &name) {
    const fs::path dir = fs::temp_directory_path() / ("starkernel_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

// ---------------------------------------------------------------- parsing

TEST(ParseSpec, OneDimensionalUnitalAlgebra) {
    const AlgebraSpec s = parse_spec(R"({"dim":1,"constants":[{"j":0,"k":0,"l":0,"re":1,"im":0}]})");
    EXPECT_EQ(s.name, "algebra");
    EXPECT_EQ(s.pairing_weight, 1.0);
    ASSERT_EQ(s.constants.dim(), 1u);
    EXPECT_EQ(s.constants(0, 0, 0), Complex(1.0));
}

TEST(ParseSpec, ExoticFixtureEqualsTheCatalogConstants) {
    const AlgebraSpec s = read_spec_file(fixture("exotic.json"));
    EXPECT_EQ(s.name, "exotic");
    EXPECT_EQ(s.constants, exotic_structure_constants());
}

TEST(ParseSpec, PauliFixtureHoldsTheKernelTensor) {
    const AlgebraSpec s = read_spec_file(fixture("pauli.json"));
    EXPECT_EQ(s.pairing_weight, 2.0);
    const auto k = printed_pauli_kernel_slices();
    for (std::size_t l = 0; l < 4; ++l)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t m = 0; m < 4; ++m)
                EXPECT_EQ(s.constants(j, m, l), k[l](j, m));
}

TEST(ParseSpec, ImaginaryPartIsOptional) {
    const AlgebraSpec s = parse_spec(R"({"dim":2,"constants":[{"j":1,"k":0,"l":1,"re":-2.5}]})");
    EXPECT_EQ(s.constants(1, 0, 1), Complex(-2.5, 0.0));
    EXPECT_EQ(s.constants(0, 0, 0), Complex());
}

void expect_parse_error(const std::string &path, const std::vector<std::string> &needles) {
    try {
        (void)read_spec_file(path);
        FAIL() << "expected ParseError for " << path;
    } catch (const ParseError &e) {
        const std::string what = e.what();
        for (const auto &n : needles)
            EXPECT_NE(what.find(n), std::string::npos) << "'" << n << "' missing from: " << what;
    }
}

TEST(ParseSpec, OutOfRangeIndexNamesLineFieldAndTriplet) {
    expect_parse_error(fixture("bad_index.json"),
                       {"line 6", "constants[1].j", "triplet (2,0,1)", "dim 2"});
}

TEST(ParseSpec, DuplicateTripletNamesTheLine) {
    expect_parse_error(fixture("duplicate.json"), {"line 7", "constants[2]", "duplicate", "(0,0,0)"});
}

TEST(ParseSpec, MalformedJsonNamesTheLine) {
    expect_parse_error(fixture("malformed.json"), {"line 5", "malformed JSON"});
}

TEST(ParseSpec, RejectsStructuralMistakes) {
    const std::vector<std::string> bad{
        R"({"constants":[]})",                                            // no dim
        R"({"dim":0,"constants":[]})",                                    // empty
        R"({"dim":65,"constants":[]})",                                   // too large
        R"({"dim":2.5,"constants":[]})",                                  // not a count
        R"({"dim":2,"constants":[],"extra":1})",                          // unknown key
        R"({"dim":2,"constants":[{"j":0,"k":0,"l":0}]})",                 // no re
        R"({"dim":2,"constants":[{"j":-1,"k":0,"l":0,"re":1}]})",         // negative
        R"({"dim":2,"constants":[{"j":0,"k":0,"l":0,"re":"1"}]})",        // string value
        R"({"dim":2,"constants":[{"j":0,"k":0,"l":0,"re":1,"x":0}]})",    // unknown field
        R"({"dim":2,"pairing_weight":0,"constants":[]})",                 // weight
        R"([1,2])",                                                       // not an object
    };
    for (const auto &text : bad)
        EXPECT_THROW((void)parse_spec(text), ParseError) << text;
}

TEST(ParseSpec, UnreadableFileIsAParseError) {
    EXPECT_THROW((void)read_spec_file(kFixtures / "does_not_exist.json"), ParseError);
}

// ------------------------------------------------------------- round trip

TEST(RoundTrip, FixturesSurviveSerializeAndParse) {
    for (const char *name : {"exotic.json", "pauli.json", "unital1.json", "zero.json"}) {
        const AlgebraSpec s = read_spec_file(fixture(name));
        const AlgebraSpec back = parse_spec(serialize_spec(s));
        EXPECT_EQ(back.name, s.name);
        EXPECT_EQ(back.pairing_weight, s.pairing_weight);
        EXPECT_EQ(back.constants, s.constants) << name;
    }
}

TEST(RoundTrip, RandomComplexTensorIsBitExact) {
    std::mt19937_64 rng(81);
    std::normal_distribution<double> g;
    AlgebraSpec s;
    s.name = "random";
    s.constants = StructureConstants(5);
    for (std::size_t j = 0; j < 5; ++j)
        for (std::size_t k = 0; k < 5; ++k)
            for (std::size_t l = 0; l < 5; ++l)
                s.constants(j, k, l) = Complex(g(rng), g(rng)) * 1e-3;
    s.constants(0, 0, 0) = Complex(1.0 / 3.0, -std::numbers::pi);
    const std::string text = serialize_spec(s);
    const AlgebraSpec back = parse_spec(text);
    EXPECT_EQ(back.constants, s.constants);
    EXPECT_EQ(serialize_spec(back), text);
}

// ------------------------------------------------------------- exit codes

TEST(ExitCodes, SuccessInputErrorAndMathFailure) {
    EXPECT_EQ(run({"check", fixture("exotic.json")}).code, kExitOk);
    EXPECT_EQ(run({"realize", fixture("exotic.json")}).code, kExitOk);
    EXPECT_EQ(run({"realize", fixture("zero.json")}).code, kExitMath);
    EXPECT_EQ(run({"check", fixture("bad_index.json")}).code, kExitInput);
    EXPECT_EQ(run({"realize", fixture("malformed.json")}).code, kExitInput);
    EXPECT_EQ(run({"kernel", fixture("duplicate.json")}).code, kExitInput);
    EXPECT_EQ(run({"check", fixture("does_not_exist.json")}).code, kExitInput);
    EXPECT_EQ(run({}).code, kExitInput);
    EXPECT_EQ(run({"frobnicate"}).code, kExitInput);
    EXPECT_EQ(run({"check"}).code, kExitInput);
    EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(ExitCodes, NonAssociativeSpecFailsCheckUnlessToleranceAllowsIt) {
    // e0 e0 = e1 and e0 e1 = e0: the residual is exactly 1.
    const fs::path dir = scratch_dir("nonassoc");
    fs::create_directories(dir);
    std::ofstream(dir / "spec.json")
        << R"({"dim":2,"constants":[{"j":0,"k":0,"l":1,"re":1},{"j":0,"k":1,"l":0,"re":1}]})";
    const std::string path = (dir / "spec.json").string();
    const CliRun strict = run({"check", path});
    EXPECT_EQ(strict.code, kExitMath);
    EXPECT_EQ(json::parse(strict.out)["associativity"], 1.0);
    EXPECT_FALSE(json::parse(strict.out)["passed"].get<bool>());
    EXPECT_EQ(run({"check", path, "--tol-algebra", "2"}).code, kExitOk);
    EXPECT_EQ(run({"check", path, "--tol-algebra", "abc"}).code, kExitInput);
}

TEST(ExitCodes, ErrorsGoToStderrAndStdoutStaysParseable) {
    const CliRun bad = run({"check", fixture("bad_index.json")});
    EXPECT_TRUE(bad.out.empty());
    EXPECT_NE(bad.err.find("line 6"), std::string::npos);
    const CliRun zero = run({"realize", fixture("zero.json")});
    EXPECT_TRUE(json::accept(zero.out));
    EXPECT_FALSE(zero.err.empty());
}

// ---------------------------------------------------------- report schema

TEST(ReportSchema, FieldSetAndOrderAreStable) {
    const json r = json::parse(run({"realize", fixture("exotic.json")}).out);
    const std::vector<std::string> expected{"scheme",   "dim",        "hilbert_dim",
                                            "pairing_weight", "tolerance", "residuals",
                                            "associativity_worst", "dual_constants",
                                            "warnings", "error",      "passed"};
    std::vector<std::string> keys;
    const nlohmann::ordered_json ordered =
        nlohmann::ordered_json::parse(run({"realize", fixture("exotic.json")}).out);
    for (const auto &[k, v] : ordered.items())
        keys.push_back(k);
    EXPECT_EQ(keys, expected);
    std::vector<std::string> residual_keys;
    for (const auto &[k, v] : ordered["residuals"].items())
        residual_keys.push_back(k);
    EXPECT_EQ(residual_keys, (std::vector<std::string>{"associativity", "quantizer_closure",
                                                       "duality", "kernel_recovery",
                                                       "dequantizer_closure"}));
    EXPECT_TRUE(r["error"].is_null());
    EXPECT_TRUE(r["passed"].get<bool>());
}

TEST(ReportSchema, ResidualsAreNonnegativeNumbersOrNull) {
    for (const char *name : {"exotic.json", "pauli.json", "unital1.json", "zero.json"}) {
        const json r = json::parse(run({"realize", fixture(name)}).out);
        for (const auto &[k, v] : r["residuals"].items())
            EXPECT_TRUE(v.is_null() || (v.is_number() && v.get<double>() >= 0.0)) << name << k;
    }
}

TEST(ReportSchema, IdenticalAcrossRuns) {
    EXPECT_EQ(run({"realize", fixture("pauli.json")}).out,
              run({"realize", fixture("pauli.json")}).out);
}

TEST(ReportSchema, RankErrorCarriesRankAndExpected) {
    const json r = json::parse(run({"realize", fixture("zero.json")}).out);
    EXPECT_EQ(r["error"]["kind"], "rank");
    EXPECT_EQ(r["error"]["rank"], 0);
    EXPECT_EQ(r["error"]["expected"], 3);
    EXPECT_TRUE(r["residuals"]["duality"].is_null());
    EXPECT_FALSE(r["passed"].get<bool>());
}

// -------------------------------------------------------------- realize

TEST(Realize, ExoticResidualsAndDualConstants) {
    const json r = json::parse(run({"realize", fixture("exotic.json")}).out);
    for (const char *k : {"associativity", "quantizer_closure", "duality", "kernel_recovery"})
        EXPECT_LE(r["residuals"][k].get<double>(), 1e-10) << k;
    // Dual constants are C_kj^l / 2.
    const StructureConstants c = exotic_structure_constants();
    StructureConstants dual(4);
    for (const auto &e : r["dual_constants"])
        dual(e["j"], e["k"], e["l"]) = Complex(e["re"].get<double>(), e["im"].get<double>());
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k)
            for (std::size_t l = 0; l < 4; ++l)
                EXPECT_LE(std::abs(dual(j, k, l) - 0.5 * c(k, j, l)), 1e-12);
}

TEST(Realize, PauliDumpsAreTheTransposedKernelSlices) {
    const fs::path dir = scratch_dir("pauli");
    ASSERT_EQ(run({"realize", fixture("pauli.json"), "--out", dir.string()}).code, kExitOk);
    for (const char *f : {"report.json", "quantizers.txt", "dequantizers.txt", "scheme.json",
                          "kernel.json"})
        EXPECT_TRUE(fs::exists(dir / f)) << f;

    std::ifstream qin(dir / "quantizers.txt");
    const auto q = read_matrices(qin);
    ASSERT_EQ(q.size(), 4u);
    const auto k = printed_pauli_kernel_slices();
    for (std::size_t s = 0; s < 4; ++s) {
        EXPECT_EQ(q[s].name, "D" + std::to_string(s));
        EXPECT_EQ(q[s].matrix, mat_transpose(k[s]));
    }
    std::ifstream uin(dir / "dequantizers.txt");
    const auto u = read_matrices(uin);
    ASSERT_EQ(u.size(), 4u);
    EXPECT_EQ(u[0].name, "U0");

    const AlgebraSpec recovered = read_spec_file(dir / "kernel.json");
    EXPECT_LE(max_abs_diff(recovered.constants, read_spec_file(fixture("pauli.json")).constants),
              1e-12);
    EXPECT_EQ(json::parse(slurp(dir / "report.json")),
              json::parse(run({"realize", fixture("pauli.json")}).out));
}

TEST(KernelCommand, PrintsARecoveredSpec) {
    const CliRun r = run({"kernel", fixture("exotic.json")});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_EQ(parse_spec(r.out).constants, exotic_structure_constants());
}

TEST(DualizeCommand, PrintsTheDualSpec) {
    const CliRun r = run({"dualize", fixture("exotic.json")});
    ASSERT_EQ(r.code, kExitOk);
    const AlgebraSpec d = parse_spec(r.out);
    EXPECT_EQ(d.name, "exotic-dual");
    const StructureConstants c = exotic_structure_constants();
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k)
            for (std::size_t l = 0; l < 4; ++l)
                EXPECT_LE(std::abs(d.constants(j, k, l) - 0.5 * c(k, j, l)), 1e-12);
    EXPECT_EQ(run({"dualize", fixture("zero.json")}).code, kExitMath);
}

// ---------------------------------------------------------------- demos

TEST(Demo, FiniteDemosPassAndListTheirChecks) {
    for (const char *name : {"pauli", "exotic", "kappa"}) {
        const CliRun r = run({"demo", name});
        EXPECT_EQ(r.code, kExitOk) << name << "\n" << r.err;
        const json j = json::parse(r.out);
        EXPECT_EQ(j["demo"], name);
        EXPECT_FALSE(j["checks"].empty());
        EXPECT_TRUE(j["passed"].get<bool>());
    }
}

TEST(Demo, UnknownNameIsAUsageError) {
    EXPECT_EQ(run({"demo", "nope"}).code, kExitInput);
    EXPECT_EQ(run({"demo"}).code, kExitInput);
}

TEST(Demo, KappaFlagsAreValidated) {
    EXPECT_EQ(run({"demo", "kappa", "--s", "1.3,0.2,-0.5,0.4"}).code, kExitOk);
    EXPECT_EQ(run({"demo", "kappa", "--s", "1,2,3"}).code, kExitInput);
    EXPECT_EQ(run({"demo", "kappa", "--s", "1,x,0,0"}).code, kExitInput);
    const CliRun singular = run({"demo", "kappa", "--s", "1,1,0,0"});
    EXPECT_EQ(singular.code, kExitMath);
    EXPECT_NE(singular.out.find("s = (1, 1, 0, 0)"), std::string::npos);
}

TEST(Demo, LevelsFlagIsRangeChecked) {
    EXPECT_EQ(run({"demo", "moyal", "--levels", "10"}).code, kExitInput);
    EXPECT_EQ(run({"demo", "moyal", "--levels", "many"}).code, kExitInput);
}

TEST(Demo, MoyalWritesItsTables) {
    const fs::path dir = scratch_dir("moyal");
    const CliRun r = run({"demo", "moyal", "--levels", "60", "--out", dir.string()});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_TRUE(fs::exists(dir / "groenewold.csv"));
    EXPECT_TRUE(fs::exists(dir / "kernel.csv"));
    EXPECT_TRUE(json::parse(r.out)["passed"].get<bool>());
}

TEST(ParseSVector, AcceptsFourRealsOnly) {
    EXPECT_EQ(parse_s_vector("1,0,-0.5,2e-1"), (std::array<double, 4>{1, 0, -0.5, 0.2}));
    EXPECT_EQ(parse_s_vector(" 1 , 2 , 3 , 4 "), (std::array<double, 4>{1, 2, 3, 4}));
    for (const char *bad : {"", "1,2,3", "1,2,3,4,5", "1,,3,4", "a,b,c,d", "1,2,3,inf"})
        EXPECT_THROW((void)parse_s_vector(bad), ParseError) << bad;
}

// ------------------------------------------------------- installed binary

int shell(const std::string &cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Binary, ExitCodesAndStreamsEndToEnd) {
    const fs::path dir = scratch_dir("binary");
    fs::create_directories(dir);
    const std::string bin = "\"" + kBinary.string() + "\"";
    const std::string out = (dir / "out.json").string();
    const std::string err = (dir / "err.txt").string();

    EXPECT_EQ(shell(bin + " realize " + fixture("exotic.json") + " > " + out + " 2> " + err), 0);
    EXPECT_TRUE(json::parse(slurp(out))["passed"].get<bool>());
    EXPECT_NE(slurp(err).find("PASSED"), std::string::npos);

    EXPECT_EQ(shell(bin + " realize " + fixture("zero.json") + " > " + out + " 2> " + err), 2);
    EXPECT_EQ(json::parse(slurp(out))["error"]["kind"], "rank");

    EXPECT_EQ(shell(bin + " check " + fixture("malformed.json") + " > " + out + " 2> " + err), 1);
    EXPECT_NE(slurp(err).find("line 5"), std::string::npos);

    EXPECT_EQ(shell(bin + " demo nope > " + out + " 2> " + err), 1);
    EXPECT_EQ(shell(bin + " demo pauli > " + out + " 2> " + err), 0);
}

TEST(Binary, ThreadCapDoesNotChangeResults) {
    const fs::path dir = scratch_dir("threads");
    fs::create_directories(dir);
    const std::string bin = "\"" + kBinary.string() + "\"";
    const std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();
    ASSERT_EQ(shell("STARKERNEL_THREADS=1 " + bin + " demo tomography > " + a + " 2>/dev/null"), 0);
    ASSERT_EQ(shell("STARKERNEL_THREADS=4 " + bin + " demo tomography > " + b + " 2>/dev/null"), 0);
    EXPECT_EQ(slurp(a), slurp(b));
}

} // namespace
