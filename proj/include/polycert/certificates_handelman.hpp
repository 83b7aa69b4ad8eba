#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <vector>

#include "polycert/bisection.hpp"
#include "polycert/certificates_polya.hpp"
#include "polycert/lp_solver.hpp"
#include "polycert/polytope_geometry.hpp"

namespace polycert {

// Handelman basis for a polytope with K facets at level d: all alpha in N^K
// with |alpha| <= d, in graded lex order. Count C(K+d, d).
inline std::vector<Exponent> handelman_basis(const Polytope& poly, int d) {
    return exponents_up_to_degree(poly.n_facets(), d);
}

// Expanded basis products prod_i (w_i^T x + u_i)^{alpha_i}, aligned with
// handelman_basis(poly, d). Built incrementally: each index extends a
// previously expanded one by a single facet factor.
inline std::vector<Polynomial> handelman_basis_expansions(const Polytope& poly, int d) {
    const auto basis = handelman_basis(poly, d);
    std::vector<Polynomial> facet_polys;
    for (const auto& f : poly.facets) {
        Polynomial fp = Polynomial::constant(poly.n_vars, f.u);
        for (int j = 0; j < poly.n_vars; ++j) {
            if (f.w(j) == 0.0) continue;
            Exponent e(static_cast<std::size_t>(poly.n_vars), 0);
            e[static_cast<std::size_t>(j)] = 1;
            fp.add_term(e, f.w(j));
        }
        fp.prune();
        facet_polys.push_back(fp);
    }
    std::map<Exponent, Polynomial, GradedLexLess> cache;
    cache.emplace(Exponent(static_cast<std::size_t>(poly.n_facets()), 0),
                  Polynomial::constant(poly.n_vars, 1.0));
    std::vector<Polynomial> out;
    out.reserve(basis.size());
    for (const auto& alpha : basis) {
        auto it = cache.find(alpha);
        if (it == cache.end()) {
            int j = 0;
            while (alpha[static_cast<std::size_t>(j)] == 0) ++j;
            Exponent prev = alpha;
            --prev[static_cast<std::size_t>(j)];
            it = cache.emplace(alpha, cache.at(prev) * facet_polys[static_cast<std::size_t>(j)])
                     .first;
        }
        out.push_back(it->second);
    }
    return out;
}

// Sum of b_alpha * basis_alpha expanded into the monomial basis.
inline Polynomial handelman_expand(const Polytope& poly, const Eigen::VectorXd& b, int d) {
    const auto expansions = handelman_basis_expansions(poly, d);
    if (b.size() != static_cast<Eigen::Index>(expansions.size()))
        throw std::invalid_argument("handelman_expand: coefficient vector length mismatch");
    Polynomial out(poly.n_vars);
    for (std::size_t i = 0; i < expansions.size(); ++i) {
        if (b(static_cast<Eigen::Index>(i)) == 0.0) continue;
        for (const auto& [e, c] : expansions[i].terms())
            out.add_term_scaled(e, c, b(static_cast<Eigen::Index>(i)));
    }
    out.prune();
    return out;
}

struct HandelmanCertificate {
    int degree = 0;
    Eigen::VectorXd b;  // aligned with handelman_basis(poly, degree)
    bool strictly_positive = false;
    bool polytope_bounded = true;
};

// LP feasibility: find b >= 0 with sum b_alpha basis_alpha = f - gamma,
// matching coefficients monomial by monomial.
inline std::optional<HandelmanCertificate> handelman_certify(const Polynomial& f,
                                                             const Polytope& poly, double gamma,
                                                             int d) {
    if (d < f.degree())
        throw std::invalid_argument("handelman_certify: d below the degree of f");
    const auto expansions = handelman_basis_expansions(poly, d);
    const auto monomials = exponents_up_to_degree(poly.n_vars, d);
    std::map<Exponent, int, GradedLexLess> row_of;
    for (std::size_t r = 0; r < monomials.size(); ++r)
        row_of[monomials[r]] = static_cast<int>(r);

    const int nb = static_cast<int>(expansions.size());
    const int nrows = static_cast<int>(monomials.size());
    LinearProgram lp = LinearProgram::make(nb);
    lp.lower.setZero();
    lp.a_eq = Eigen::MatrixXd::Zero(nrows, nb);
    lp.b_eq = Eigen::VectorXd::Zero(nrows);
    for (int j = 0; j < nb; ++j)
        for (const auto& [e, c] : expansions[static_cast<std::size_t>(j)].terms())
            lp.a_eq(row_of.at(e), j) = c;
    Polynomial target = f - Polynomial::constant(f.n_vars(), gamma);
    for (const auto& [e, c] : target.terms()) lp.b_eq(row_of.at(e)) = c;

    const auto r = lp_solve(lp);
    if (r.status != LpStatus::Optimal) return std::nullopt;
    HandelmanCertificate cert;
    cert.degree = d;
    cert.b = r.x.cwiseMax(0.0);
    cert.strictly_positive = (r.x.array() > 1e-9).all();
    cert.polytope_bounded = polytope_is_bounded(poly);
    return cert;
}

struct HandelmanMinimizeOptions {
    int d_max = -1;  // default 2*deg(f)+2
    double tol = 1e-2;
    std::optional<std::pair<double, double>> bracket;
    int coarse_grid = 6;
};

struct HandelmanBound {
    double lower_bound = 0.0;
    HandelmanCertificate certificate;
    BisectionTrace trace;
};

// Bisection on gamma; each probe escalates d = deg(f)..d_max.
inline HandelmanBound handelman_minimize(const Polynomial& f, const Polytope& poly,
                                         const HandelmanMinimizeOptions& opts = {}) {
    const int d_lo = std::max(f.degree(), 0);
    const int d_max = opts.d_max >= 0 ? opts.d_max : 2 * f.degree() + 2;

    std::pair<double, double> bracket;
    if (opts.bracket) {
        bracket = *opts.bracket;
    } else {
        // coarse box grid filtered by membership
        Eigen::VectorXd lo_pt(poly.n_vars), hi_pt(poly.n_vars);
        double flo = kInf, fhi = -kInf;
        LinearProgram box_lp = LinearProgram::make(poly.n_vars);
        box_lp.a_ineq.resize(poly.n_facets(), poly.n_vars);
        box_lp.b_ineq.resize(poly.n_facets());
        for (int i = 0; i < poly.n_facets(); ++i) {
            box_lp.a_ineq.row(i) = poly.facets[static_cast<std::size_t>(i)].w.transpose();
            box_lp.b_ineq(i) = -poly.facets[static_cast<std::size_t>(i)].u;
        }
        Eigen::VectorXd lo_box(poly.n_vars), hi_box(poly.n_vars);
        for (int j = 0; j < poly.n_vars; ++j) {
            box_lp.objective.setZero();
            box_lp.objective(j) = -1.0;
            lo_box(j) = lp_solve(box_lp).x(j);
            box_lp.objective(j) = 1.0;
            hi_box(j) = lp_solve(box_lp).x(j);
        }
        const int steps = opts.coarse_grid;
        std::vector<int> idx(static_cast<std::size_t>(poly.n_vars), 0);
        while (true) {
            Eigen::VectorXd x(poly.n_vars);
            for (int i = 0; i < poly.n_vars; ++i)
                x(i) = lo_box(i) + (hi_box(i) - lo_box(i)) * idx[static_cast<std::size_t>(i)] / steps;
            if (poly.contains(x, 1e-9)) {
                const double v = f.evaluate(x);
                flo = std::min(flo, v);
                fhi = std::max(fhi, v);
            }
            int i = 0;
            while (i < poly.n_vars && idx[static_cast<std::size_t>(i)] == steps)
                idx[static_cast<std::size_t>(i++)] = 0;
            if (i == poly.n_vars) break;
            ++idx[static_cast<std::size_t>(i)];
        }
        bracket = {flo - 1.0, fhi + 1.0};
    }

    std::map<double, HandelmanCertificate> certs;
    auto probe = [&](double gamma) -> std::pair<bool, int> {
        for (int d = d_lo; d <= d_max; ++d) {
            auto cert = handelman_certify(f, poly, gamma, d);
            if (cert) {
                certs[gamma] = *cert;
                return {true, d};
            }
        }
        return {false, d_max};
    };
    BisectionOutcome bo = bisect_max_feasible({bracket.first, bracket.second, opts.tol}, probe);
    HandelmanBound res;
    res.lower_bound = bo.certified;
    res.trace = std::move(bo.trace);
    res.certificate = certs.at(bo.certified);
    return res;
}

struct BernsteinResult {
    std::optional<Eigen::VectorXd> coefficients;  // c_{i,j}, i+j = d, ordered by i
    bool strictly_positive = false;
};

// Exact-degree Bernstein certificate on [-1,1]: solve the (d+1)x(d+1)
// linear system sum c_{i,j} (1+x)^i (1-x)^j = f with i+j=d; the basis spans
// degree-d polynomials, so the solution is unique and infeasibility means
// some c is negative.
inline BernsteinResult bernstein_certify(const Polynomial& f, int d) {
    if (f.n_vars() != 1) throw std::invalid_argument("bernstein_certify: univariate only");
    if (d < f.degree()) throw std::invalid_argument("bernstein_certify: d below deg(f)");
    Polynomial plus = Polynomial::constant(1, 1.0), minus = Polynomial::constant(1, 1.0);
    plus.add_term({1}, 1.0);
    minus.add_term({1}, -1.0);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d + 1, d + 1);
    for (int i = 0; i <= d; ++i) {
        const Polynomial basis = poly_power(plus, i) * poly_power(minus, d - i);
        for (const auto& [e, c] : basis.terms()) a(e[0], i) = c;
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + 1);
    for (const auto& [e, c] : f.terms()) rhs(e[0]) = c;
    const Eigen::VectorXd c = a.colPivHouseholderQr().solve(rhs);
    BernsteinResult res;
    const double scale = 1.0 + c.cwiseAbs().maxCoeff();
    if ((c.array() >= -1e-9 * scale).all()) {
        res.coefficients = c;
        res.strictly_positive = (c.array() > 1e-9 * scale).all();
    }
    return res;
}

}  // namespace polycert
