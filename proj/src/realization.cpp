#include "starkernel/realization.hpp"
#include "starkernel/linalg.hpp"
#include "starkernel/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace starkernel {

namespace {

void require_family(std::span<const CMatrix> ms, const char *what) {
    if (ms.empty())
        throw ShapeError(std::string(what) + ": empty operator family");
    for (const auto &m : ms) {
        if (!m.is_square())
            throw ShapeError(std::string(what) + ": operator " + m.shape_string() +
                             " is not square");
        require_same_shape(ms.front(), m, what);
    }
}

} // namespace

Scheme::Scheme(std::string name, std::vector<CMatrix> quantizers,
               std::vector<CMatrix> dequantizers, std::optional<StructureConstants> constants,
               double duality_tol)
    : name_(std::move(name)), quantizers_(std::move(quantizers)),
      dequantizers_(std::move(dequantizers)), constants_(std::move(constants)) {
    require_family(quantizers_, "scheme quantizers");
    require_family(dequantizers_, "scheme dequantizers");
    require_same_shape(quantizers_.front(), dequantizers_.front(), "scheme");
    if (quantizers_.size() != dequantizers_.size())
        throw ShapeError("scheme: " + std::to_string(quantizers_.size()) + " quantizers but " +
                         std::to_string(dequantizers_.size()) + " dequantizers");
    if (constants_ && constants_->dim() != quantizers_.size())
        throw ShapeError("scheme: constants of dimension " + std::to_string(constants_->dim()) +
                         " for " + std::to_string(quantizers_.size()) + " labels");
    const double r = duality_residual(dequantizers_, quantizers_);
    if (r > duality_tol)
        throw ContractError("scheme '" + name_ + "': duality residual " + std::to_string(r) +
                            " exceeds tolerance");
}

std::vector<CMatrix> regular_representation(const StructureConstants &c) {
    const std::size_t n = c.dim();
    std::vector<CMatrix> ds;
    ds.reserve(n);
    for (std::size_t g = 0; g < n; ++g) {
        CMatrix d(n, n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                d(a, b) = c(g, b, a);
        ds.push_back(std::move(d));
    }
    return ds;
}

double verify_quantizers(const StructureConstants &c, std::span<const CMatrix> ds) {
    require_family(ds, "verify_quantizers");
    if (ds.size() != c.dim())
        throw ShapeError("verify_quantizers: " + std::to_string(ds.size()) +
                         " matrices for dimension " + std::to_string(c.dim()));
    const std::size_t n = c.dim();
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            CMatrix diff = ds[j] * ds[k];
            for (std::size_t l = 0; l < n; ++l)
                if (c(j, k, l) != Complex{})
                    diff.add_scaled(-c(j, k, l), ds[l]);
            worst = std::max(worst, frobenius_norm(diff));
        }
    return worst;
}

std::vector<CMatrix> solve_dequantizers(std::span<const CMatrix> ds) {
    require_family(ds, "solve_dequantizers");
    const std::size_t n = ds.size();
    std::vector<CMatrix> us;
    us.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Complex> rhs(n);
        rhs[k] = 1.0;
        try {
            us.push_back(min_norm_solve(ds, rhs));
        } catch (const InfeasibleError &e) {
            throw RankError("solve_dequantizers: quantizers are linearly dependent (Gram rank " +
                                std::to_string(e.rank()) + " of " + std::to_string(n) +
                                "); duality cannot be solved",
                            e.rank(), n);
        }
    }
    return us;
}

double duality_residual(std::span<const CMatrix> us, std::span<const CMatrix> ds) {
    if (us.size() != ds.size())
        throw ShapeError("duality_residual: family sizes differ");
    double worst = 0.0;
    for (std::size_t j = 0; j < us.size(); ++j)
        for (std::size_t k = 0; k < ds.size(); ++k) {
            const Complex expected = j == k ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(trace_product(us[j], ds[k]) - expected));
        }
    return worst;
}

Scheme scheme_from_constants(const StructureConstants &c, std::string name) {
    std::vector<CMatrix> ds = regular_representation(c);
    std::vector<CMatrix> us = solve_dequantizers(ds);
    return Scheme(std::move(name), std::move(ds), std::move(us), c);
}

KernelTensor kernel_from_scheme(const Scheme &s) {
    const std::size_t n = s.labels();
    const auto &ds = s.quantizers();
    const auto &us = s.dequantizers();
    KernelTensor k(n);
    // One slot per j: products D_j D_k are formed once and traced against all U_l.
    parallel_for(n, [&](std::size_t j) {
        for (std::size_t kk = 0; kk < n; ++kk) {
            const CMatrix prod = ds[j] * ds[kk];
            for (std::size_t l = 0; l < n; ++l)
                k(j, kk, l) = trace_product(prod, us[l]);
        }
    });
    return k;
}

std::vector<Complex> to_symbol(const CMatrix &a, const Scheme &s) {
    require_same_shape(s.dequantizers().front(), a, "to_symbol");
    std::vector<Complex> f;
    f.reserve(s.labels());
    for (const auto &u : s.dequantizers())
        f.push_back(trace_product(u, a));
    return f;
}

CMatrix from_symbol(std::span<const Complex> f, const Scheme &s) {
    if (f.size() != s.labels())
        throw ShapeError("from_symbol: symbol of length " + std::to_string(f.size()) +
                         " for a scheme with " + std::to_string(s.labels()) + " labels");
    CMatrix a(s.hilbert_dim(), s.hilbert_dim());
    for (std::size_t j = 0; j < f.size(); ++j)
        if (f[j] != Complex{})
            a.add_scaled(f[j], s.quantizers()[j]);
    return a;
}

std::vector<Complex> to_dual_symbol(const CMatrix &a, const Scheme &s) {
    require_same_shape(s.quantizers().front(), a, "to_dual_symbol");
    std::vector<Complex> g;
    g.reserve(s.labels());
    for (const auto &d : s.quantizers())
        g.push_back(trace_product(d, a));
    return g;
}

Scheme dualize(const Scheme &s) {
    std::string name = s.name();
    const std::string suffix = "-dual";
    if (name.size() > suffix.size() && name.ends_with(suffix))
        name.resize(name.size() - suffix.size());
    else
        name += suffix;
    // Duality transfers exactly: trace_product is symmetric bit for bit.
    return Scheme(std::move(name), s.dequantizers(), s.quantizers());
}

Complex expectation_pairing(const CMatrix &rho, const CMatrix &a, const Scheme &s) {
    const std::vector<Complex> w = to_symbol(rho, s);
    const std::vector<Complex> g = to_dual_symbol(a, s);
    Complex sum{};
    for (std::size_t j = 0; j < w.size(); ++j)
        sum += w[j] * g[j];
    return sum;
}

double dequantizer_closure_residual(const Scheme &s) {
    const KernelTensor dual = kernel_from_scheme(dualize(s));
    return verify_quantizers(dual, s.dequantizers());
}

} // namespace starkernel
