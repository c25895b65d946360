#include "starkernel/catalog.hpp"
#include "starkernel/cli/commands.hpp"
#include "starkernel/cli/report.hpp"
#include "starkernel/fock.hpp"
#include "starkernel/matrix_io.hpp"
#include "starkernel/parallel.hpp"
#include "starkernel/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace starkernel::cli {

using nlohmann::ordered_json;
using namespace std::complex_literals;

namespace {

ordered_json matrix_json(const CMatrix &m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json complex_json(Complex z) { return {z.real(), z.imag()}; }

double family_diff(std::span<const CMatrix> a, std::span<const CMatrix> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, max_abs_diff(a[i], b[i]));
    return m;
}

std::vector<CMatrix> transposed(std::span<const CMatrix> ms) {
    std::vector<CMatrix> out;
    for (const auto &m : ms)
        out.push_back(mat_transpose(m));
    return out;
}

void write_csv(const std::optional<std::filesystem::path> &dir, const std::string &file,
               const std::string &text) {
    if (!dir)
        return;
    std::error_code ec;
    std::filesystem::create_directories(*dir, ec);
    if (ec)
        throw ParseError("cannot create output directory: " + ec.message(), dir->string());
    std::ofstream f(*dir / file, std::ios::binary);
    if (!f)
        throw ParseError("cannot write output file", (*dir / file).string());
    f << text;
}

struct Check {
    std::string name;
    double value;
    double tolerance;
    bool at_least = false; // passes when value >= tolerance
    bool passed() const { return at_least ? value >= tolerance : value <= tolerance; }
};

struct DemoBuilder {
    ordered_json report;
    std::vector<Check> checks;
    std::vector<std::string> warnings;

    void add(std::string name, double value, double tolerance, bool at_least = false) {
        checks.push_back({std::move(name), value, tolerance, at_least});
    }

    CommandOutput finish(const std::string &demo) {
        ordered_json list = ordered_json::array();
        bool ok = true;
        std::ostringstream s;
        s << "demo " << demo << "\n";
        for (const auto &c : checks) {
            list.push_back({{"name", c.name},
                            {"value", c.value},
                            {"tolerance", c.tolerance},
                            {"relation", c.at_least ? ">=" : "<="},
                            {"passed", c.passed()}});
            ok = ok && c.passed();
            s << "  " << (c.passed() ? "ok   " : "FAIL ") << c.name << " = " << format_real(c.value)
              << (c.at_least ? " (>= " : " (<= ") << c.tolerance << ")\n";
        }
        std::sort(warnings.begin(), warnings.end());
        warnings.erase(std::unique(warnings.begin(), warnings.end()), warnings.end());
        for (const auto &w : warnings)
            s << "  warning: " << w << "\n";
        s << (ok ? "PASSED" : "FAILED") << "\n";
        ordered_json j;
        j["demo"] = demo;
        for (auto &[k, v] : report.items())
            j[k] = v;
        j["checks"] = std::move(list);
        j["warnings"] = warnings;
        j["passed"] = ok;
        return {ok ? kExitOk : kExitMath, j.dump(2) + "\n", s.str()};
    }
};

CommandOutput demo_pauli(const DemoOptions &o) {
    DemoBuilder b;
    const CatalogEntry e = pauli_scheme();
    const KernelTensor k = kernel_from_scheme(e.scheme);
    const auto printed = printed_pauli_kernel_slices();
    ordered_json slices = ordered_json::array();
    double worst = 0.0;
    for (std::size_t s = 0; s < 4; ++s) {
        CMatrix slice(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                slice(i, j) = k(i, j, s);
                worst = std::max(worst, std::abs(slice(i, j) - printed[s](i, j)));
            }
        slices.push_back(matrix_json(slice));
    }
    b.report["kernel_slices"] = std::move(slices);
    b.add("kernel_vs_printed_K", worst, o.tol.algebra);

    // (sigma_1 / 2)(sigma_2 / 2) = i sigma_3 / 4 through the symbol product.
    const auto sigma = pauli_matrices();
    const auto f = to_symbol(0.5 * sigma[1], e.scheme);
    const auto g = to_symbol(0.5 * sigma[2], e.scheme);
    const CMatrix product = from_symbol(k.multiply(f, g), e.scheme);
    b.report["symbol_product_matrix"] = matrix_json(product);
    b.add("symbol_product_vs_i_sigma3_over_4", max_abs_diff(product, 0.25i * sigma[3]),
          o.tol.algebra);
    b.add("duality", duality_residual(e.scheme.dequantizers(), e.scheme.quantizers()),
          o.tol.algebra);
    b.report["notes"] = e.notes;
    return b.finish("pauli");
}

CommandOutput demo_exotic(const DemoOptions &o) {
    DemoBuilder b;
    const StructureConstants c = exotic_structure_constants();
    const auto printed_d = printed_exotic_quantizers();
    const auto printed_u = printed_exotic_dequantizers();
    const std::vector<CMatrix> ds = regular_representation(c);
    const std::vector<CMatrix> us = solve_dequantizers(ds);
    b.add("regular_representation_vs_printed_quantizers", family_diff(ds, printed_d), 0.0);
    b.add("min_norm_dequantizers_vs_printed", family_diff(us, printed_u), o.tol.algebra);
    const CatalogEntry e = exotic_scheme();
    b.add("kernel_recovery", max_abs_diff(kernel_from_scheme(e.scheme), c), o.tol.algebra);
    const KernelTensor dual = kernel_from_scheme(dualize(e.scheme));
    StructureConstants half_op = c.opposite();
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k)
            for (std::size_t l = 0; l < 4; ++l)
                half_op(j, k, l) *= 0.5;
    b.add("dual_constants_vs_half_C_kj", max_abs_diff(dual, half_op), o.tol.algebra);

    // Constants recomputed from the product itself on the Weyl basis.
    const std::vector<CMatrix> weyl{CMatrix::from_rows({{1, 0}, {0, 0}}),
                                    CMatrix::from_rows({{0, 1}, {0, 0}}),
                                    CMatrix::from_rows({{0, 0}, {1, 0}}),
                                    CMatrix::from_rows({{0, 0}, {0, 1}})};
    b.add("constants_from_product", max_abs_diff(from_matrix_basis(weyl, exotic_product), c),
          o.tol.algebra);
    b.add("associativity", check_associativity(c).max_residual, o.tol.algebra);
    b.report["constants"] = constants_to_json(c);
    b.report["dual_constants"] = constants_to_json(dual);
    b.report["notes"] = e.notes;
    return b.finish("exotic");
}

CommandOutput demo_kappa(const DemoOptions &o) {
    DemoBuilder b;
    const auto &s = o.s;
    b.report["s"] = s;
    const StructureConstants c = kappa_structure_constants(s);

    const auto sigma = pauli_matrices();
    CMatrix kappa(2, 2);
    for (std::size_t a = 0; a < 4; ++a)
        kappa.add_scaled(s[a], sigma[a]);
    const StructureConstants brute = from_matrix_basis(
        std::span<const CMatrix>(sigma),
        [&](const CMatrix &x, const CMatrix &y) { return x * kappa * y; });
    b.add("closed_form_vs_brute_force", max_abs_diff(c, brute), o.tol.algebra);
    b.add("associativity", check_associativity(c).max_residual, o.tol.algebra);

    const std::vector<CMatrix> ds = regular_representation(c);
    b.add("quantizer_closure", verify_quantizers(c, ds), o.tol.algebra);
    const CatalogEntry e = kappa_scheme(s);
    b.add("duality", duality_residual(e.scheme.dequantizers(), e.scheme.quantizers()),
          o.tol.algebra);
    b.add("kernel_recovery", max_abs_diff(kernel_from_scheme(e.scheme), c), o.tol.algebra);

    // The printed family is written in the opposite (transposed) orientation.
    const auto printed = printed_kappa_quantizers(s);
    ordered_json rel;
    rel["regular_vs_printed"] = family_diff(ds, printed);
    rel["regular_transpose_vs_printed"] = family_diff(transposed(ds), printed);
    if (s == std::array<double, 4>{1.0, 0.0, 0.0, 0.0}) {
        const auto k = printed_pauli_kernel_slices();
        std::vector<CMatrix> two_k;
        for (const auto &m : k)
            two_k.push_back(2.0 * m);
        rel["regular_vs_2K"] = family_diff(ds, two_k);
        rel["regular_transpose_vs_2K"] = family_diff(transposed(ds), two_k);
        b.add("factor_two_relation_transposed", family_diff(transposed(ds), two_k),
              o.tol.algebra);
    } else {
        rel["regular_vs_2K"] = nullptr;
        rel["regular_transpose_vs_2K"] = nullptr;
    }
    b.add("printed_family_transposed", family_diff(transposed(ds), printed), o.tol.algebra);
    if (family_diff(ds, printed) > o.tol.algebra)
        b.warnings.push_back("printed kappa quantizers equal the transposes of the left regular "
                             "representation (they close under the opposite product)");
    b.report["printed_relations"] = std::move(rel);
    b.report["constants"] = constants_to_json(c);
    b.report["notes"] = e.notes;
    return b.finish("kappa");
}

std::string csv_row(const PhasePoint &a, const PhasePoint &b, const PhasePoint &c,
                    std::size_t n, double residual) {
    std::ostringstream os;
    os << format_real(a.q) << ',' << format_real(a.p) << ',' << format_real(b.q) << ','
       << format_real(b.p) << ',' << format_real(c.q) << ',' << format_real(c.p) << ',' << n
       << ',' << format_real(residual) << '\n';
    return os.str();
}

/// 5 x 5 lattice of phase points with |z| <= 1.
std::vector<Complex> moyal_probe_points() {
    std::vector<Complex> zs;
    for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j)
            zs.push_back(Complex(0.35 * i, 0.35 * j));
    return zs;
}

CommandOutput demo_moyal(const DemoOptions &o) {
    DemoBuilder b;
    const FockSpace fs(o.levels);
    const TruncationPolicy policy;
    b.report["levels"] = o.levels;
    b.report["probe_levels"] = policy.probe_levels;
    b.report["buffer"] = policy.buffer_for(o.levels);

    // Groenewold identity on pairs (z, i z / 2); x3 = x1 - x2 in the table.
    const std::vector<Complex> zs = moyal_probe_points();
    std::vector<double> residuals(zs.size());
    parallel_for(zs.size(), [&](std::size_t i) {
        residuals[i] = groenewold_identity_residual(fs, zs[i], 0.5i * zs[i], policy);
    });
    std::string csv = "q1,p1,q2,p2,q3,p3,N,residual\n";
    ordered_json rows = ordered_json::array();
    double worst = 0.0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const Complex z2 = 0.5i * zs[i];
        const PhasePoint x1 = PhasePoint::from_z(zs[i]), x2 = PhasePoint::from_z(z2),
                         x3 = PhasePoint::from_z(zs[i] - z2);
        csv += csv_row(x1, x2, x3, o.levels, residuals[i]);
        rows.push_back({x1.q, x1.p, x2.q, x2.p, x3.q, x3.p, o.levels, residuals[i]});
        worst = std::max(worst, residuals[i]);
        if (std::abs(2.0 * (zs[i] - z2)) > fs.trust_radius())
            b.warnings.push_back("some probe displacements exceed the trust radius at N = " +
                                 std::to_string(o.levels));
    }
    b.report["groenewold_columns"] = {"q1", "p1", "q2", "p2", "q3", "p3", "N", "residual"};
    b.report["groenewold"] = std::move(rows);
    b.add("groenewold_identity_max", worst, o.tol.moyal);
    write_csv(o.out_dir, "groenewold.csv", csv);

    double unitarity = 0.0, hermiticity = 0.0;
    for (const Complex z : zs) {
        unitarity = std::max(unitarity, sector_unitarity_residual(displacement(fs, z).matrix));
        hermiticity = std::max(hermiticity, sector_hermiticity_residual(
                                                weyl_dequantizer(fs, PhasePoint::from_z(z)).matrix));
    }
    b.add("displacement_unitarity", unitarity, 1e-8);
    b.add("dequantizer_hermiticity", hermiticity, 1e-8);

    // Kernel trace against the closed form, and the self-duality ratio.
    const std::vector<std::array<PhasePoint, 3>> triples{
        {PhasePoint{0.0, 0.0}, PhasePoint{0.0, 0.0}, PhasePoint{0.0, 0.0}},
        {PhasePoint{0.4, -0.3}, PhasePoint{-0.2, 0.5}, PhasePoint{0.1, 0.2}},
        {PhasePoint{-0.6, 0.1}, PhasePoint{0.3, 0.3}, PhasePoint{0.5, -0.4}},
    };
    std::string kcsv = "q1,p1,q2,p2,q3,p3,N,residual\n";
    ordered_json krows = ordered_json::array();
    double kworst = 0.0, ratio_worst = 0.0;
    for (const auto &t : triples) {
        const Complex trace = moyal_kernel_trace(fs, t[0], t[1], t[2], policy);
        const Complex oracle = moyal_kernel_oracle(t[0], t[1], t[2]);
        const double r = std::abs(trace - oracle);
        kworst = std::max(kworst, r);
        const Complex dual = moyal_dual_kernel_trace(fs, t[0], t[1], t[2], policy);
        ratio_worst =
            std::max(ratio_worst, std::abs(dual / trace - 2.0 * std::numbers::pi));
        kcsv += csv_row(t[0], t[1], t[2], o.levels, r);
        krows.push_back({{"x1", {t[0].q, t[0].p}},
                         {"x2", {t[1].q, t[1].p}},
                         {"x3", {t[2].q, t[2].p}},
                         {"trace", complex_json(trace)},
                         {"oracle", complex_json(oracle)},
                         {"residual", r}});
    }
    b.report["kernel_trace"] = std::move(krows);
    b.add("kernel_trace_vs_oracle_max", kworst, o.tol.kernel);
    b.add("self_duality_ratio_minus_2pi", ratio_worst, o.tol.kernel);
    write_csv(o.out_dir, "kernel.csv", kcsv);
    return b.finish("moyal");
}

CommandOutput demo_tomography(const DemoOptions &o) {
    DemoBuilder b;
    const FockSpace fs(o.levels);
    const std::size_t n = fs.levels();
    b.report["levels"] = o.levels;

    const std::vector<std::pair<TomoPoint, TomoPoint>> probes{
        {{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}},
        {{0.3, 1.0, 0.0}, {0.3, 1.0, 0.0}},
        {{0.5, 0.6, -0.4}, {-0.2, 0.3, 0.8}},
        {{1.0, 0.7, 0.7}, {0.0, -0.5, 0.2}},
    };
    double kid = 0.0;
    for (const auto &[x1, x2] : probes)
        kid = std::max(kid, kernel_identity_residual(fs, x1, x2));
    b.add("kernel_identity_max", kid, o.tol.moyal);

    auto grid = [](double lo, double hi, double step) {
        std::vector<double> xs;
        for (double x = lo; x <= hi + 1e-12; x += step)
            xs.push_back(x);
        return xs;
    };
    const std::vector<double> xs = grid(-6.0, 6.0, 0.05);
    ordered_json tomos = ordered_json::array();
    double norm_worst = 0.0, oracle_worst = 0.0, homog_worst = 0.0, lowest = 0.0;
    for (std::size_t level = 0; level <= 2; ++level) {
        CMatrix rho(n, n);
        rho(level, level) = 1.0;
        const TomogramSamples t = tomogram(fs, rho, 1.0, 0.0, xs);
        b.warnings.insert(b.warnings.end(), t.warnings.begin(), t.warnings.end());
        norm_worst = std::max(norm_worst, std::abs(tomogram_normalization(t) - 1.0));
        std::string csv = "X,value\n";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            oracle_worst =
                std::max(oracle_worst,
                         std::abs(t.values[i] - fock_tomogram_oracle(level, xs[i], 1.0, 0.0)));
            lowest = std::min(lowest, t.values[i]);
            csv += format_real(xs[i]) + "," + format_real(t.values[i]) + "\n";
        }
        write_csv(o.out_dir, "tomogram_n" + std::to_string(level) + ".csv", csv);
        tomos.push_back({{"n", level}, {"normalization", tomogram_normalization(t)}});

        // Base grid on [-3.5, 3.5]; scaled grid on [-8, 8] with an
        // incommensurate step, so lambda X goes through interpolation.
        const std::vector<double> base_xs = grid(-3.5, 3.5, 0.05);
        const std::vector<double> scaled_xs = grid(-8.0, 8.0, 0.037);
        for (const auto &[lambda, mu] :
             {std::pair{2.0, 1.0}, std::pair{-1.0, 1.0}, std::pair{0.5, 2.0}}) {
            const TomogramSamples base = tomogram(fs, rho, mu, 0.0, base_xs);
            const TomogramSamples scaled = tomogram(fs, rho, lambda * mu, 0.0, scaled_xs);
            homog_worst = std::max(homog_worst, homogeneity_residual(base, scaled, lambda));
        }
    }
    b.report["tomograms"] = std::move(tomos);
    b.add("normalization_error_max", norm_worst, o.tol.tomo);
    b.add("fock_oracle_error_max", oracle_worst, o.tol.tomo);
    b.add("most_negative_sample", -lowest, 1e-9);
    b.add("homogeneity_max", homog_worst, o.tol.tomo);

    const TomographicTestFunction gauss = gaussian_test_function();
    double pair_worst = 0.0;
    for (const TomoPoint &x : {TomoPoint{0.3, 1.0, 0.0}, TomoPoint{0.5, 0.6, 0.8},
                               TomoPoint{-1.0, 0.4, -1.2}})
        pair_worst = std::max(pair_worst, homogeneous_pairing_check(gauss, x).residual);
    b.add("pairing_gaussian_max", pair_worst, o.tol.kernel);
    const PairingCheck counter =
        homogeneous_pairing_check(nonhomogeneous_test_function(), TomoPoint{0.0, 1.0, 0.0});
    b.report["counterexample_probe"] = {0.0, 1.0, 0.0};
    b.add("pairing_nonhomogeneous_counterexample", counter.residual, 1e-2, true);
    return b.finish("tomography");
}

} // namespace

CommandOutput cmd_demo(const DemoOptions &o) {
    using Runner = CommandOutput (*)(const DemoOptions &);
    Runner run = nullptr;
    if (o.name == "pauli")
        run = demo_pauli;
    else if (o.name == "exotic")
        run = demo_exotic;
    else if (o.name == "kappa")
        run = demo_kappa;
    else if (o.name == "moyal")
        run = demo_moyal;
    else if (o.name == "tomography")
        run = demo_tomography;
    if (run != nullptr) {
        try {
            return run(o);
        } catch (const RankError &e) {
            ordered_json j = {{"demo", o.name},
                              {"error",
                               {{"kind", "rank"},
                                {"message", e.what()},
                                {"rank", e.rank()},
                                {"expected", e.expected()}}},
                              {"passed", false}};
            return {kExitMath, j.dump(2) + "\n",
                    "demo " + o.name + "\n  error: " + e.what() + "\nFAILED\n"};
        }
    }
    throw ParseError("unknown demo '" + o.name + "' (expected pauli, exotic, kappa, moyal, "
                     "tomography)",
                     "demo");
}

} // namespace starkernel::cli
