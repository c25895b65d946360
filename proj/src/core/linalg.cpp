#include "starkernel/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace starkernel {

GramSolve solve_gram(const CMatrix &g, std::span<const Complex> rhs, double rank_tol) {
    if (!g.is_square())
        throw ShapeError("solve_gram: matrix is not square (" + g.shape_string() + ")");
    const std::size_t m = g.rows();
    if (rhs.size() != m)
        throw ShapeError("solve_gram: rhs length " + std::to_string(rhs.size()) +
                         " does not match " + g.shape_string());

    CMatrix a = g;
    std::vector<Complex> b(rhs.begin(), rhs.end());
    std::vector<std::size_t> col(m);
    std::iota(col.begin(), col.end(), std::size_t{0});

    const double scale = max_abs(g);
    std::size_t rank = 0;
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t pr = k, pc = k;
        double best = -1.0;
        for (std::size_t i = k; i < m; ++i)
            for (std::size_t j = k; j < m; ++j)
                if (const double v = std::abs(a(i, j)); v > best) {
                    best = v;
                    pr = i;
                    pc = j;
                }
        if (scale == 0.0 || best <= rank_tol * scale)
            break;
        if (pr != k) {
            for (std::size_t j = 0; j < m; ++j)
                std::swap(a(k, j), a(pr, j));
            std::swap(b[k], b[pr]);
        }
        if (pc != k) {
            for (std::size_t i = 0; i < m; ++i)
                std::swap(a(i, k), a(i, pc));
            std::swap(col[k], col[pc]);
        }
        for (std::size_t i = k + 1; i < m; ++i) {
            const Complex f = a(i, k) / a(k, k);
            if (f == Complex{})
                continue;
            for (std::size_t j = k; j < m; ++j)
                a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
        rank = k + 1;
    }

    std::vector<Complex> y(m);
    for (std::size_t kk = rank; kk-- > 0;) {
        Complex s = b[kk];
        for (std::size_t j = kk + 1; j < rank; ++j)
            s -= a(kk, j) * y[j];
        y[kk] = s / a(kk, kk);
    }
    GramSolve out;
    out.rank = rank;
    out.x.assign(m, Complex{});
    for (std::size_t k = 0; k < m; ++k)
        out.x[col[k]] = y[k];
    return out;
}

CMatrix min_norm_solve(std::span<const CMatrix> constraint_rows, std::span<const Complex> rhs,
                       const MinNormOptions &opts) {
    const std::size_t m = constraint_rows.size();
    if (m == 0)
        throw ShapeError("min_norm_solve: no constraints");
    if (rhs.size() != m)
        throw ShapeError("min_norm_solve: " + std::to_string(m) + " constraints but " +
                         std::to_string(rhs.size()) + " right-hand sides");
    const CMatrix &first = constraint_rows.front();
    for (const auto &r : constraint_rows)
        require_same_shape(first, r, "min_norm_solve constraints");

    // X = sum_i c_i R_i^dagger, so Tr[R_j X] = sum_i Tr[R_j R_i^dagger] c_i.
    CMatrix gram(m, m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i)
            gram(j, i) = frobenius_inner(constraint_rows[i], constraint_rows[j]);

    const GramSolve sol = solve_gram(gram, rhs, opts.rank_tol);

    CMatrix x(first.cols(), first.rows());
    for (std::size_t i = 0; i < m; ++i)
        if (sol.x[i] != Complex{})
            x.add_scaled(sol.x[i], mat_adjoint(constraint_rows[i]));

    double rhs_scale = 1.0;
    for (const auto &v : rhs)
        rhs_scale = std::max(rhs_scale, std::abs(v));
    double worst = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        worst = std::max(worst, std::abs(trace_product(constraint_rows[j], x) - rhs[j]));
    if (worst > opts.residual_tol * rhs_scale)
        throw InfeasibleError("min_norm_solve: constraints are inconsistent (Gram rank " +
                                  std::to_string(sol.rank) + " of " + std::to_string(m) +
                                  ", residual " + std::to_string(worst) + ")",
                              sol.rank, m);
    return x;
}

namespace {

double one_norm(const CMatrix &a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i)
            s += std::abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

// Degree-16 Taylor polynomial by Paterson-Stockmeyer with block size 4:
// seven matrix products instead of sixteen.
CMatrix taylor16(const CMatrix &a) {
    constexpr int kDegree = 16;
    constexpr int kBlock = 4;
    double coef[kDegree + 1];
    coef[0] = 1.0;
    for (int k = 1; k <= kDegree; ++k)
        coef[k] = coef[k - 1] / k;

    const std::size_t n = a.rows();
    const CMatrix id = CMatrix::identity(n);
    const CMatrix a2 = a * a;
    const CMatrix a3 = a2 * a;
    const CMatrix a4 = a3 * a;
    const CMatrix *powers[kBlock] = {&id, &a, &a2, &a3};

    auto block = [&](int b) {
        CMatrix s(n, n);
        for (int r = 0; r < kBlock; ++r) {
            const int k = kBlock * b + r;
            if (k > kDegree)
                break;
            s.add_scaled(coef[k], *powers[r]);
        }
        return s;
    };

    CMatrix result = block(kDegree / kBlock);
    for (int b = kDegree / kBlock - 1; b >= 0; --b)
        result = result * a4 + block(b);
    return result;
}

} // namespace

CMatrix expm_anti_hermitian(const CMatrix &h, double tol) {
    if (!h.is_square())
        throw ShapeError("expm_anti_hermitian: matrix is not square (" + h.shape_string() + ")");
    require_finite(h, "expm_anti_hermitian");
    const CMatrix defect = h + mat_adjoint(h);
    const double scale = std::max(1.0, frobenius_norm(h));
    if (frobenius_norm(defect) > tol * scale)
        throw ContractError("expm_anti_hermitian: input is not anti-Hermitian (defect " +
                            std::to_string(frobenius_norm(defect)) + ")");

    constexpr double kTheta = 0.5;
    const double norm = one_norm(h);
    int squarings = 0;
    if (norm > kTheta)
        squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta)));
    CMatrix scaled = h;
    scaled *= std::ldexp(1.0, -squarings);
    CMatrix u = taylor16(scaled);
    for (int s = 0; s < squarings; ++s)
        u = u * u;
    return u;
}

HermitianEigen eigh(const CMatrix &a_in, double tol) {
    if (!a_in.is_square())
        throw ShapeError("eigh: matrix is not square (" + a_in.shape_string() + ")");
    require_finite(a_in, "eigh");
    const double scale = std::max(1.0, frobenius_norm(a_in));
    if (frobenius_norm(a_in - mat_adjoint(a_in)) > tol * scale)
        throw ContractError("eigh: input is not Hermitian");

    const std::size_t n = a_in.rows();
    CMatrix a = a_in;
    CMatrix v = CMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        a(i, i) = a(i, i).real();

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j)
                    s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    constexpr int kMaxSweeps = 60;
    const double target = 1e-15 * frobenius_norm(a_in);
    for (int sweep = 0; sweep < kMaxSweeps && off_norm() > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag == 0.0)
                    continue;
                // Phase the (p,q) entry real, then a real symmetric rotation.
                const Complex phase = a(p, q) / mag;
                const double app = a(p, p).real(), aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // G restricted to (p,q): [[c, s], [-s conj(phase), c conj(phase)]]
                const Complex gpp = c, gpq = s;
                const Complex gqp = -s * std::conj(phase), gqq = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
    HermitianEigen out{std::vector<double>(n), CMatrix(n, n)};
    for (std::size_t c = 0; c < n; ++c) {
        out.values[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r)
            out.vectors(r, c) = v(r, order[c]);
    }
    return out;
}

} // namespace starkernel
