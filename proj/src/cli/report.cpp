#include "starkernel/cli/report.hpp"

#include <algorithm>

namespace starkernel::cli {

using nlohmann::ordered_json;

namespace {

ordered_json optional_number(const std::optional<double> &v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

bool within(const std::optional<double> &v, double tol) { return v && *v <= tol; }

} // namespace

Realization realize_spec(const AlgebraSpec &spec, double tolerance) {
    Realization out;
    VerificationReport &r = out.report;
    r.scheme = spec.name;
    r.dim = spec.constants.dim();
    r.pairing_weight = spec.pairing_weight;
    r.tolerance = tolerance;

    const AssociativityReport assoc = check_associativity(spec.constants, tolerance);
    r.associativity = assoc.max_residual;
    r.associativity_worst = assoc.worst_indices;
    if (!assoc.passed)
        r.warnings.push_back("constants are not associative; the regular representation "
                             "cannot close");
    if (spec.pairing_weight != 1.0)
        r.warnings.push_back("dequantizers follow the plain trace duality; divide by the "
                             "pairing weight for the source convention");

    try {
        const std::vector<CMatrix> ds = regular_representation(spec.constants);
        r.hilbert_dim = ds.front().rows();
        r.quantizer_closure = verify_quantizers(spec.constants, ds);
        Scheme scheme(spec.name, ds, solve_dequantizers(ds), spec.constants,
                      std::max(tolerance, 1e-10));
        r.duality = duality_residual(scheme.dequantizers(), scheme.quantizers());
        KernelTensor kernel = kernel_from_scheme(scheme);
        r.kernel_recovery = max_abs_diff(kernel, spec.constants);
        r.dual_constants = kernel_from_scheme(dualize(scheme));
        r.dequantizer_closure = dequantizer_closure_residual(scheme);
        if (*r.dequantizer_closure > tolerance)
            r.warnings.push_back("min-norm dequantizers do not close under the dual kernel "
                                 "(informational)");
        out.scheme = std::move(scheme);
        out.kernel = std::move(kernel);
    } catch (const RankError &e) {
        r.error = ReportError{"rank", e.what(), e.rank(), e.expected()};
    } catch (const ContractError &e) {
        r.error = ReportError{"contract", e.what(), std::nullopt, std::nullopt};
    }

    r.passed = !r.error && within(r.associativity, tolerance) &&
               within(r.quantizer_closure, tolerance) && within(r.duality, tolerance) &&
               within(r.kernel_recovery, tolerance);
    return out;
}

ordered_json constants_to_json(const StructureConstants &c, double chop) {
    ordered_json list = ordered_json::array();
    for (std::size_t j = 0; j < c.dim(); ++j)
        for (std::size_t k = 0; k < c.dim(); ++k)
            for (std::size_t l = 0; l < c.dim(); ++l)
                if (const Complex v = c(j, k, l); std::abs(v) > chop)
                    list.push_back(
                        {{"j", j}, {"k", k}, {"l", l}, {"re", v.real()}, {"im", v.imag()}});
    return list;
}

ordered_json to_json(const VerificationReport &r) {
    ordered_json j;
    j["scheme"] = r.scheme;
    j["dim"] = r.dim;
    j["hilbert_dim"] = r.hilbert_dim ? ordered_json(*r.hilbert_dim) : ordered_json(nullptr);
    j["pairing_weight"] = r.pairing_weight;
    j["tolerance"] = r.tolerance;
    j["residuals"] = {
        {"associativity", optional_number(r.associativity)},
        {"quantizer_closure", optional_number(r.quantizer_closure)},
        {"duality", optional_number(r.duality)},
        {"kernel_recovery", optional_number(r.kernel_recovery)},
        {"dequantizer_closure", optional_number(r.dequantizer_closure)},
    };
    j["associativity_worst"] = r.associativity_worst;
    j["dual_constants"] =
        r.dual_constants ? constants_to_json(*r.dual_constants) : ordered_json(nullptr);
    j["warnings"] = r.warnings;
    if (r.error) {
        ordered_json e = {{"kind", r.error->kind}, {"message", r.error->message}};
        e["rank"] = r.error->rank ? ordered_json(*r.error->rank) : ordered_json(nullptr);
        e["expected"] =
            r.error->expected ? ordered_json(*r.error->expected) : ordered_json(nullptr);
        j["error"] = std::move(e);
    } else {
        j["error"] = nullptr;
    }
    j["passed"] = r.passed;
    return j;
}

} // namespace starkernel::cli
