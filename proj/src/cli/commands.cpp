#include "starkernel/cli/commands.hpp"
#include "starkernel/cli/report.hpp"
#include "starkernel/matrix_io.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace starkernel::cli {

using nlohmann::ordered_json;

namespace {

std::string residual_text(const std::optional<double> &v) {
    return v ? format_real(*v) : std::string("n/a");
}

std::string summarize(const VerificationReport &r) {
    std::ostringstream os;
    os << "scheme " << r.scheme << " (dim " << r.dim << "): "
       << (r.passed ? "PASSED" : "FAILED") << "\n"
       << "  associativity      " << residual_text(r.associativity) << "\n"
       << "  quantizer closure  " << residual_text(r.quantizer_closure) << "\n"
       << "  duality            " << residual_text(r.duality) << "\n"
       << "  kernel recovery    " << residual_text(r.kernel_recovery) << "\n"
       << "  dequantizer closure " << residual_text(r.dequantizer_closure)
       << " (informational)\n";
    if (r.error)
        os << "  error: " << r.error->message << "\n";
    for (const auto &w : r.warnings)
        os << "  warning: " << w << "\n";
    return os.str();
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ParseError("cannot write output file", path.string());
    f << text;
    if (!f)
        throw ParseError("write failed", path.string());
}

std::string dump_family(const std::vector<CMatrix> &ms, const std::string &prefix) {
    std::vector<NamedMatrix> named;
    for (std::size_t i = 0; i < ms.size(); ++i)
        named.push_back({prefix + std::to_string(i), ms[i]});
    std::ostringstream os;
    write_matrices(os, named);
    return os.str();
}

} // namespace

CommandOutput cmd_check(const AlgebraSpec &spec, const Tolerances &tol) {
    const AssociativityReport a = check_associativity(spec.constants, tol.algebra);
    ordered_json j;
    j["command"] = "check";
    j["scheme"] = spec.name;
    j["dim"] = spec.constants.dim();
    j["tolerance"] = tol.algebra;
    j["associativity"] = a.max_residual;
    j["associativity_worst"] = a.worst_indices;
    j["passed"] = a.passed;
    std::ostringstream s;
    s << "scheme " << spec.name << " (dim " << spec.constants.dim() << "): associativity residual "
      << format_real(a.max_residual) << (a.passed ? " PASSED" : " FAILED") << "\n";
    return {a.passed ? kExitOk : kExitMath, j.dump(2) + "\n", s.str()};
}

CommandOutput cmd_realize(const AlgebraSpec &spec, const Tolerances &tol,
                          const std::optional<std::filesystem::path> &out_dir) {
    const Realization r = realize_spec(spec, tol.algebra);
    const std::string report = to_json(r.report).dump(2) + "\n";
    if (out_dir) {
        std::error_code ec;
        std::filesystem::create_directories(*out_dir, ec);
        if (ec)
            throw ParseError("cannot create output directory: " + ec.message(), out_dir->string());
        write_text(*out_dir / "report.json", report);
        if (r.scheme) {
            write_text(*out_dir / "quantizers.txt", dump_family(r.scheme->quantizers(), "D"));
            write_text(*out_dir / "dequantizers.txt", dump_family(r.scheme->dequantizers(), "U"));
            ordered_json header = {{"name", spec.name},
                                   {"dim", spec.constants.dim()},
                                   {"hilbert_dim", r.scheme->hilbert_dim()},
                                   {"pairing_weight", spec.pairing_weight},
                                   {"duality", "Tr[U_j D_k] = delta_jk"},
                                   {"quantizers", "quantizers.txt"},
                                   {"dequantizers", "dequantizers.txt"},
                                   {"kernel", "kernel.json"}};
            write_text(*out_dir / "scheme.json", header.dump(2) + "\n");
            write_text(*out_dir / "kernel.json",
                       serialize_spec({spec.name, spec.pairing_weight, *r.kernel}, kReportChop));
        }
    }
    return {r.report.passed ? kExitOk : kExitMath, report, summarize(r.report)};
}

CommandOutput cmd_kernel(const AlgebraSpec &spec, const Tolerances &tol) {
    const Realization r = realize_spec(spec, tol.algebra);
    if (!r.kernel)
        return {kExitMath, to_json(r.report).dump(2) + "\n", summarize(r.report)};
    return {r.report.passed ? kExitOk : kExitMath,
            serialize_spec({spec.name, spec.pairing_weight, *r.kernel}, kReportChop),
            summarize(r.report)};
}

CommandOutput cmd_dualize(const AlgebraSpec &spec, const Tolerances &tol) {
    const Realization r = realize_spec(spec, tol.algebra);
    if (!r.report.dual_constants)
        return {kExitMath, to_json(r.report).dump(2) + "\n", summarize(r.report)};
    return {r.report.passed ? kExitOk : kExitMath,
            serialize_spec({spec.name + "-dual", 1.0, *r.report.dual_constants}, kReportChop),
            summarize(r.report)};
}

std::array<double, 4> parse_s_vector(const std::string &text) {
    std::array<double, 4> s{};
    std::size_t count = 0;
    const char *p = text.data();
    const char *end = text.data() + text.size();
    while (true) {
        if (count == 4)
            throw ParseError("expected exactly four comma-separated reals, got more", "--s");
        while (p < end && *p == ' ')
            ++p;
        const auto [next, ec] = std::from_chars(p, end, s[count]);
        if (ec != std::errc() || !std::isfinite(s[count]))
            throw ParseError("component " + std::to_string(count) + " of '" + text +
                                 "' is not a finite real",
                             "--s");
        ++count;
        p = next;
        while (p < end && *p == ' ')
            ++p;
        if (p == end)
            break;
        if (*p != ',')
            throw ParseError("unexpected character '" + std::string(1, *p) + "' in '" + text + "'",
                             "--s");
        ++p;
    }
    if (count != 4)
        throw ParseError("expected exactly four comma-separated reals, got " +
                             std::to_string(count),
                         "--s");
    return s;
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"starkernel: trace-formula star-products from structure constants"};
    app.require_subcommand(1);

    Tolerances tol;
    auto add_tolerances = [&](CLI::App *cmd) {
        cmd->add_option("--tol-algebra", tol.algebra, "Finite-algebra tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--tol-moyal", tol.moyal, "Truncated-operator identity tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--tol-tomo", tol.tomo, "Tomogram quadrature tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--tol-kernel", tol.kernel, "Closed-form oracle tolerance")
            ->check(CLI::PositiveNumber);
    };

    std::string spec_path;
    std::string out_dir;

    CLI::App *check = app.add_subcommand("check", "Check associativity of a spec");
    check->add_option("spec", spec_path, "Algebra spec file (JSON)")->required();
    add_tolerances(check);

    CLI::App *realize = app.add_subcommand("realize", "Realize a spec as a quantizer scheme");
    realize->add_option("spec", spec_path, "Algebra spec file (JSON)")->required();
    realize->add_option("--out", out_dir, "Directory for matrix dumps and the report");
    add_tolerances(realize);

    CLI::App *kernel = app.add_subcommand("kernel", "Print the recovered kernel as a spec");
    kernel->add_option("spec", spec_path, "Algebra spec file (JSON)")->required();
    add_tolerances(kernel);

    CLI::App *dualize = app.add_subcommand("dualize", "Print the dual-scheme constants as a spec");
    dualize->add_option("spec", spec_path, "Algebra spec file (JSON)")->required();
    add_tolerances(dualize);

    DemoOptions demo_opts;
    std::string s_text;
    CLI::App *demo = app.add_subcommand("demo", "Run a worked scheme's check suite");
    demo->add_option("name", demo_opts.name, "pauli, exotic, kappa, moyal or tomography")
        ->required()
        ->check(CLI::IsMember({"pauli", "exotic", "kappa", "moyal", "tomography"}));
    demo->add_option("--levels", demo_opts.levels, "Fock truncation N (moyal, tomography)")
        ->check(CLI::Range(24, 400));
    demo->add_option("--s", s_text, "kappa coefficients s0,s1,s2,s3");
    demo->add_option("--out", out_dir, "Directory for CSV tables");
    add_tolerances(demo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        CommandOutput result;
        const std::optional<std::filesystem::path> out_path =
            out_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(out_dir);
        if (*demo) {
            demo_opts.tol = tol;
            demo_opts.out_dir = out_path;
            if (!s_text.empty())
                demo_opts.s = parse_s_vector(s_text);
            result = cmd_demo(demo_opts);
        } else {
            const AlgebraSpec spec = read_spec_file(spec_path);
            if (*check)
                result = cmd_check(spec, tol);
            else if (*realize)
                result = cmd_realize(spec, tol, out_path);
            else if (*kernel)
                result = cmd_kernel(spec, tol);
            else
                result = cmd_dualize(spec, tol);
        }
        out << result.stdout_text;
        err << result.summary;
        return result.exit_code;
    } catch (const ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitMath;
    }
}

} // namespace starkernel::cli
