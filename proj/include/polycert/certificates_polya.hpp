#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <vector>

#include "polycert/bisection.hpp"
#include "polycert/lp_solver.hpp"
#include "polycert/multihomog.hpp"
#include "polycert/polynomial.hpp"

namespace polycert {

// A coefficient counts as (strictly) positive when it clears a scale-aware
// margin relative to the largest coefficient of the product.
constexpr double kPositivityRel = 1e-9;

namespace coeffval {
inline double min_value(double c) { return c; }
inline double max_abs(double c) { return std::abs(c); }
inline double min_value(const Eigen::MatrixXd& c) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (c + c.transpose()),
                                                      Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}
inline double max_abs(const Eigen::MatrixXd& c) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (c + c.transpose()),
                                                      Eigen::EigenvaluesOnly);
    return std::max(std::abs(es.eigenvalues().minCoeff()),
                    std::abs(es.eigenvalues().maxCoeff()));
}
}  // namespace coeffval

// log of the multinomial coefficient total! / prod alpha_i!
inline double multinomial_log(int total, const Exponent& alpha) {
    double s = std::lgamma(static_cast<double>(total) + 1.0);
    for (int a : alpha) s -= std::lgamma(static_cast<double>(a) + 1.0);
    return s;
}

// Strict positivity of every lattice coefficient of a homogeneous product,
// with monomials missing from the sparse storage counted as zeros. The
// test runs on multinomially normalized coefficients c_alpha / (d; alpha),
// which stay on the scale of the polynomial's values on the simplex; raw
// coefficients spread over dozens of orders of magnitude at large Polya
// exponents and would defeat any single relative tolerance.
template <class T>
bool simplex_coefficients_positive(const PolynomialT<T>& p, double* min_out = nullptr) {
    const int d = p.degree();
    double minv = kInf, maxabs = 0.0;
    for (const auto& alpha : exponents_exact_degree(p.n_vars(), d)) {
        const double w = std::exp(-multinomial_log(d, alpha));
        const T& c = p.coefficient(alpha);
        minv = std::min(minv, coeffval::min_value(c) * w);
        maxabs = std::max(maxabs, coeffval::max_abs(c) * w);
    }
    if (p.empty()) minv = 0.0;
    if (min_out) *min_out = minv;
    return minv > kPositivityRel * (1.0 + maxabs);
}

// Same for multi-homogeneous products: the normalizer is the coefficient of
// the same monomial in prod (x_i + y_i)^{d_i}.
template <class T>
bool multisimplex_coefficients_positive(const PolynomialT<T>& poly2l,
                                        const std::vector<int>& degree_vec,
                                        double* min_out = nullptr) {
    const int l = static_cast<int>(degree_vec.size());
    double minv = kInf, maxabs = 0.0;
    for (const auto& h : exponents_in_box(degree_vec)) {
        double logm = 0.0;
        Exponent full(static_cast<std::size_t>(2 * l), 0);
        for (int i = 0; i < l; ++i) {
            const int di = degree_vec[static_cast<std::size_t>(i)];
            const int hi = h[static_cast<std::size_t>(i)];
            full[static_cast<std::size_t>(i)] = hi;
            full[static_cast<std::size_t>(i + l)] = di - hi;
            logm += std::lgamma(di + 1.0) - std::lgamma(hi + 1.0) - std::lgamma(di - hi + 1.0);
        }
        const double w = std::exp(-logm);
        const T& c = poly2l.coefficient(full);
        minv = std::min(minv, coeffval::min_value(c) * w);
        maxabs = std::max(maxabs, coeffval::max_abs(c) * w);
    }
    if (min_out) *min_out = minv;
    return minv > kPositivityRel * (1.0 + maxabs);
}

template <class T>
struct PolyaCertificateT {
    int exponent = 0;
    PolynomialT<T> product;
    double min_coefficient = 0.0;
};
using PolyaCertificate = PolyaCertificateT<double>;

struct PolyaNotFound {
    int e_max = 0;
    double most_negative = 0.0;  // min coefficient seen at e_max
};

template <class T>
struct PolyaOutcomeT {
    std::optional<PolyaCertificateT<T>> certificate;
    PolyaNotFound failure;

    bool found() const { return certificate.has_value(); }
};
using PolyaOutcome = PolyaOutcomeT<double>;

// Smallest e <= e_max with all coefficients of (sum x_i)^e p strictly
// positive; p must be homogeneous.
template <class T>
PolyaOutcomeT<T> polya_positivity_simplex(const PolynomialT<T>& p, int e_max) {
    if (!p.is_homogeneous())
        throw std::invalid_argument("polya_positivity_simplex: non-homogeneous input");
    PolyaOutcomeT<T> out;
    const Polynomial s = simplex_form(p.n_vars());
    PolynomialT<T> prod = p;
    for (int e = 0; e <= e_max; ++e) {
        double min_c = 0.0;
        if (simplex_coefficients_positive(prod, &min_c)) {
            out.certificate = PolyaCertificateT<T>{e, prod, min_c};
            return out;
        }
        out.failure = {e_max, min_c};
        if (e < e_max) prod = scalar_multiply(prod, s);
    }
    return out;
}

// Smallest e <= e_max with all coefficients of prod_i (x_i+y_i)^e p positive
// (matrix coefficients: minimal eigenvalue above the tolerance).
template <class T>
PolyaOutcomeT<T> polya_positivity_multisimplex(const MultiHomogT<T>& p, int e_max) {
    PolyaOutcomeT<T> out;
    const Polynomial mult = pair_multiplier(p.n_pairs, 1);
    PolynomialT<T> prod = p.poly;
    std::vector<int> degvec = p.degree_vec;
    for (int e = 0; e <= e_max; ++e) {
        double min_c = 0.0;
        if (multisimplex_coefficients_positive(prod, degvec, &min_c)) {
            out.certificate = PolyaCertificateT<T>{e, prod, min_c};
            return out;
        }
        out.failure = {e_max, min_c};
        if (e < e_max) {
            prod = scalar_multiply(prod, mult);
            for (int& d : degvec) ++d;
        }
    }
    return out;
}

struct BoundResult {
    double lower_bound = 0.0;
    PolyaCertificate certificate;  // product at the certified bound
    BisectionTrace trace;
};

struct MinimizeOptions {
    int e_max = 20;
    double tol = 1e-2;
    std::optional<std::pair<double, double>> bracket;
    int coarse_grid = 8;  // default bracket resolution
};

namespace detail {
// Default bracket [coarse grid min - 1, coarse grid max + 1].
inline std::pair<double, double> default_bracket_simplex(const Polynomial& f, int steps) {
    double lo = kInf, hi = -kInf;
    std::vector<double> x(static_cast<std::size_t>(f.n_vars()));
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        const int n = f.n_vars();
        if (pos == n - 1) {
            x[static_cast<std::size_t>(pos)] = static_cast<double>(remaining) / steps;
            const double v = f.evaluate(x);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            x[static_cast<std::size_t>(pos)] = static_cast<double>(k) / steps;
            rec(pos + 1, remaining - k);
        }
    };
    rec(0, steps);
    return {lo - 1.0, hi + 1.0};
}

inline std::pair<double, double> default_bracket_box(const Polynomial& f, const Hypercube& box,
                                                     int steps) {
    const int n = f.n_vars();
    double lo = kInf, hi = -kInf;
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    std::vector<double> x(static_cast<std::size_t>(n));
    while (true) {
        for (int i = 0; i < n; ++i)
            x[static_cast<std::size_t>(i)] =
                box.centers(i) - box.radii(i) + 2.0 * box.radii(i) * idx[static_cast<std::size_t>(i)] / steps;
        const double v = f.evaluate(x);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        int i = 0;
        while (i < n && idx[static_cast<std::size_t>(i)] == steps)
            idx[static_cast<std::size_t>(i++)] = 0;
        if (i == n) break;
        ++idx[static_cast<std::size_t>(i)];
    }
    return {lo - 1.0, hi + 1.0};
}
}  // namespace detail

// Lower bound on min over the unit simplex via bisection on gamma; each
// probe escalates the Polya exponent e = 0..e_max on
// (sum x_i)^e (f_hom - gamma (sum x_i)^d).
inline BoundResult polya_minimize_simplex(const Polynomial& f, const MinimizeOptions& opts = {}) {
    const int n = f.n_vars();
    const int d = f.degree();
    const Polynomial f_hom = homogenize(f, d);
    const Polynomial s = simplex_form(n);

    const auto bracket =
        opts.bracket ? *opts.bracket : detail::default_bracket_simplex(f, opts.coarse_grid);

    std::map<double, PolyaCertificate> certs;
    auto probe = [&](double gamma) -> std::pair<bool, int> {
        // (sum x)^e (f_hom - gamma (sum x)^d), built incrementally in e
        Polynomial base = f_hom - poly_power(s, d) * gamma;
        Polynomial prod = base;
        for (int e = 0; e <= opts.e_max; ++e) {
            double min_c = 0.0;
            if (simplex_coefficients_positive(prod, &min_c)) {
                certs[gamma] = PolyaCertificate{e, prod, min_c};
                return {true, e};
            }
            if (e < opts.e_max) prod = scalar_multiply(prod, s);
        }
        return {false, opts.e_max};
    };

    BisectionOutcome bo = bisect_max_feasible({bracket.first, bracket.second, opts.tol}, probe);
    BoundResult res;
    res.lower_bound = bo.certified;
    res.trace = std::move(bo.trace);
    res.certificate = certs.at(bo.certified);
    return res;
}

namespace detail {
// Dense coefficient grid for scalar multi-homogeneous polynomials: the
// coefficient of x^h y^(d-h) lives at multi-index h. Multiplying by
// prod_i (x_i + y_i) is a cheap per-dimension Pascal update, which keeps
// large Polya exponents affordable.
struct DensePairGrid {
    std::vector<int> deg;
    std::vector<double> a;

    std::size_t index(const Exponent& h) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < deg.size(); ++i)
            idx = idx * static_cast<std::size_t>(deg[i] + 1) + static_cast<std::size_t>(h[i]);
        return idx;
    }
};

inline DensePairGrid dense_from_multihomog(const Polynomial& poly2l,
                                           const std::vector<int>& degvec) {
    DensePairGrid g;
    g.deg = degvec;
    std::size_t total = 1;
    for (int d : degvec) total *= static_cast<std::size_t>(d) + 1;
    g.a.assign(total, 0.0);
    const int l = static_cast<int>(degvec.size());
    Exponent h(static_cast<std::size_t>(l), 0);
    for (const auto& [e, c] : poly2l.terms()) {
        for (int i = 0; i < l; ++i) h[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(i)];
        g.a[g.index(h)] += c;
    }
    return g;
}

// Multiply by prod_i (x_i + y_i): every degree grows by one.
inline void dense_multiply_all_pairs(DensePairGrid& g) {
    for (std::size_t dim = 0; dim < g.deg.size(); ++dim) {
        std::vector<int> ndeg = g.deg;
        ndeg[dim] += 1;
        std::size_t total = 1;
        for (int d : ndeg) total *= static_cast<std::size_t>(d) + 1;
        std::vector<double> na(total, 0.0);
        // strides of old and new arrays
        const std::size_t l = g.deg.size();
        std::vector<std::size_t> stride_old(l, 1), stride_new(l, 1);
        for (std::size_t i = l; i-- > 1;) {
            stride_old[i - 1] = stride_old[i] * static_cast<std::size_t>(g.deg[i] + 1);
            stride_new[i - 1] = stride_new[i] * static_cast<std::size_t>(ndeg[i] + 1);
        }
        Exponent h(l, 0);
        const std::size_t n_old = g.a.size();
        for (std::size_t flat = 0; flat < n_old; ++flat) {
            const double v = g.a[flat];
            if (v != 0.0) {
                std::size_t base = 0;
                for (std::size_t i = 0; i < l; ++i) base += static_cast<std::size_t>(h[i]) * stride_new[i];
                na[base] += v;                     // y_dim branch keeps h
                na[base + stride_new[dim]] += v;   // x_dim branch bumps h_dim
            }
            // advance multi-index in row-major flat order
            std::size_t i = l;
            while (i-- > 0) {
                if (h[i] < g.deg[i]) {
                    ++h[i];
                    break;
                }
                h[i] = 0;
            }
        }
        g.deg = ndeg;
        g.a = std::move(na);
    }
}

inline Polynomial dense_to_poly(const DensePairGrid& g) {
    const int l = static_cast<int>(g.deg.size());
    Polynomial p(2 * l);
    Exponent h(static_cast<std::size_t>(l), 0);
    for (std::size_t flat = 0; flat < g.a.size(); ++flat) {
        if (g.a[flat] != 0.0) {
            Exponent full(static_cast<std::size_t>(2 * l), 0);
            for (int i = 0; i < l; ++i) {
                full[static_cast<std::size_t>(i)] = h[static_cast<std::size_t>(i)];
                full[static_cast<std::size_t>(i + l)] = g.deg[static_cast<std::size_t>(i)] - h[static_cast<std::size_t>(i)];
            }
            p.add_term(full, g.a[flat]);
        }
        std::size_t i = static_cast<std::size_t>(l);
        while (i-- > 0) {
            if (h[i] < g.deg[i]) {
                ++h[i];
                break;
            }
            h[i] = 0;
        }
    }
    p.prune();
    return p;
}
}  // namespace detail

// Lower bound on min over a hypercube: multi-homogenize once, then bisect
// gamma with the multi-simplex Polya test.
inline BoundResult polya_minimize_hypercube(const Polynomial& f, const Hypercube& box,
                                            const MinimizeOptions& opts = {}) {
    const MultiHomogPolynomial p = multi_homogenize(f, box);
    const Polynomial gamma_basis = pair_multiplier(p.n_pairs, p.degree_vec);

    const auto bracket =
        opts.bracket ? *opts.bracket : detail::default_bracket_box(f, box, opts.coarse_grid);

    std::map<double, PolyaCertificate> certs;
    auto probe = [&](double gamma) -> std::pair<bool, int> {
        const Polynomial base = p.poly - gamma_basis * gamma;
        detail::DensePairGrid grid = detail::dense_from_multihomog(base, p.degree_vec);
        for (int e = 0; e <= opts.e_max; ++e) {
            // normalized by prod C(d_i, h_i); see multisimplex_coefficients_positive
            const std::size_t l = grid.deg.size();
            std::vector<std::vector<double>> wdim(l);
            for (std::size_t i = 0; i < l; ++i) {
                const int di = grid.deg[i];
                wdim[i].resize(static_cast<std::size_t>(di) + 1);
                for (int h = 0; h <= di; ++h)
                    wdim[i][static_cast<std::size_t>(h)] =
                        std::exp(-(std::lgamma(di + 1.0) - std::lgamma(h + 1.0) -
                                   std::lgamma(di - h + 1.0)));
            }
            double min_c = kInf, max_abs = 0.0;
            Exponent h(l, 0);
            for (std::size_t flat = 0; flat < grid.a.size(); ++flat) {
                double w = 1.0;
                for (std::size_t i = 0; i < l; ++i) w *= wdim[i][static_cast<std::size_t>(h[i])];
                const double v = grid.a[flat] * w;
                min_c = std::min(min_c, v);
                max_abs = std::max(max_abs, std::abs(v));
                std::size_t i = l;
                while (i-- > 0) {
                    if (h[i] < grid.deg[i]) {
                        ++h[i];
                        break;
                    }
                    h[i] = 0;
                }
            }
            if (min_c > kPositivityRel * (1.0 + max_abs)) {
                certs[gamma] = PolyaCertificate{e, detail::dense_to_poly(grid), min_c};
                return {true, e};
            }
            if (e < opts.e_max) detail::dense_multiply_all_pairs(grid);
        }
        return {false, opts.e_max};
    };

    BisectionOutcome bo = bisect_max_feasible({bracket.first, bracket.second, opts.tol}, probe);
    BoundResult res;
    res.lower_bound = bo.certified;
    res.trace = std::move(bo.trace);
    res.certificate = certs.at(bo.certified);
    return res;
}

// Global positivity test for f(x) = g(x_1^2, ..., x_n^2): smallest e with
// all coefficients of (sum x_i^2)^e f positive.
inline PolyaOutcome habicht_nonnegativity(const Polynomial& f, int e_max) {
    if (!f.is_homogeneous())
        throw std::invalid_argument("habicht_nonnegativity: non-homogeneous input");
    for (const auto& [e, c] : f.terms())
        for (int v : e)
            if (v % 2 != 0)
                throw std::invalid_argument("habicht_nonnegativity: odd exponent present");
    Polynomial sq(f.n_vars());
    for (int i = 0; i < f.n_vars(); ++i) {
        Exponent e(f.n_vars(), 0);
        e[static_cast<std::size_t>(i)] = 2;
        sq.add_term(e, 1.0);
    }
    PolyaOutcome out;
    Polynomial prod = f;
    for (int e = 0; e <= e_max; ++e) {
        // work in u_i = x_i^2: halve exponents, then run the simplex test
        Polynomial in_u(f.n_vars());
        for (const auto& [ex, c] : prod.terms()) {
            Exponent half(ex.size());
            for (std::size_t i = 0; i < ex.size(); ++i) half[i] = ex[i] / 2;
            in_u.add_term(half, c);
        }
        double min_c = 0.0;
        if (simplex_coefficients_positive(in_u, &min_c)) {
            out.certificate = PolyaCertificate{e, prod, min_c};
            return out;
        }
        out.failure = {e_max, min_c};
        if (e < e_max) prod = prod * sq;
    }
    return out;
}

// Orthant sign-pattern test: for each sign vector e in {-1,1}^n, the
// smallest lambda <= lambda_max such that every coefficient c_alpha of
// (1 + e^T x)^lambda f has sign e^alpha. Coefficients below the zero
// tolerance are treated as sign-compatible unless strict is set.
struct OrthantResult {
    std::map<std::vector<int>, std::optional<int>> lambda_by_orthant;

    bool all_certified() const {
        for (const auto& [e, lam] : lambda_by_orthant)
            if (!lam) return false;
        return true;
    }
};

inline OrthantResult orthant_nonnegativity(const Polynomial& f, int lambda_max,
                                           bool strict = false) {
    const int n = f.n_vars();
    OrthantResult res;
    std::vector<int> sign(static_cast<std::size_t>(n), -1);
    while (true) {
        Polynomial one_plus_ex = Polynomial::constant(n, 1.0);
        for (int i = 0; i < n; ++i) {
            Exponent e(n, 0);
            e[static_cast<std::size_t>(i)] = 1;
            one_plus_ex.add_term(e, static_cast<double>(sign[static_cast<std::size_t>(i)]));
        }
        std::optional<int> found;
        Polynomial prod = f;
        for (int lam = 0; lam <= lambda_max; ++lam) {
            const double zero_tol = strict ? 0.0 : 1e-12 * (1.0 + prod.max_coeff_norm());
            bool ok = true;
            for (const auto& [alpha, c] : prod.terms()) {
                if (std::abs(c) <= zero_tol) {
                    if (strict) {
                        ok = false;
                        break;
                    }
                    continue;
                }
                int s = 1;
                for (int i = 0; i < n; ++i)
                    if (alpha[static_cast<std::size_t>(i)] % 2 != 0)
                        s *= sign[static_cast<std::size_t>(i)];
                if ((s > 0) != (c > 0.0)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                found = lam;
                break;
            }
            if (lam < lambda_max) prod = prod * one_plus_ex;
        }
        res.lambda_by_orthant[sign] = found;

        std::size_t i = 0;
        while (i < sign.size() && sign[i] == 1) sign[i++] = -1;
        if (i == sign.size()) break;
        sign[i] = 1;
    }
    return res;
}

}  // namespace polycert
