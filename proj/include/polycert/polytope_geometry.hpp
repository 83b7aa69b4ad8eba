#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "polycert/domains.hpp"
#include "polycert/lp_solver.hpp"

namespace polycert {

// Boundedness check: solve max/min x_j over the polytope for every
// coordinate. Theorem-level completeness needs a compact polytope, so the
// callers warn (without failing) when this returns false.
inline bool polytope_is_bounded(const Polytope& p) {
    const int n = p.n_vars;
    LinearProgram lp = LinearProgram::make(n);
    lp.a_ineq.resize(p.n_facets(), n);
    lp.b_ineq.resize(p.n_facets());
    for (int i = 0; i < p.n_facets(); ++i) {
        lp.a_ineq.row(i) = p.facets[static_cast<std::size_t>(i)].w.transpose();
        lp.b_ineq(i) = -p.facets[static_cast<std::size_t>(i)].u;
    }
    for (int j = 0; j < n; ++j) {
        for (double dir : {1.0, -1.0}) {
            lp.objective.setZero();
            lp.objective(j) = dir;
            const auto r = lp_solve(lp);
            if (r.status == LpStatus::Unbounded) return false;
            if (r.status == LpStatus::Infeasible) return true;  // empty is trivially bounded
        }
    }
    return true;
}

// A point strictly inside the polytope (Chebyshev-style: maximize the
// uniform slack over all facets).
inline std::optional<Eigen::VectorXd> polytope_interior_point(const Polytope& p) {
    const int n = p.n_vars;
    LinearProgram lp = LinearProgram::make(n + 1);  // (x, slack)
    lp.objective.setZero();
    lp.objective(n) = 1.0;
    lp.upper(n) = 1.0;  // cap so unbounded cones do not break the search
    lp.a_ineq.resize(p.n_facets(), n + 1);
    lp.b_ineq.resize(p.n_facets());
    for (int i = 0; i < p.n_facets(); ++i) {
        const auto& f = p.facets[static_cast<std::size_t>(i)];
        lp.a_ineq.row(i).head(n) = f.w.transpose();
        lp.a_ineq(i, n) = -f.w.norm();
        lp.b_ineq(i) = -f.u;
    }
    const auto r = lp_solve(lp);
    if (r.status != LpStatus::Optimal || r.value <= 1e-9) return std::nullopt;
    return r.x.head(n).eval();
}

// A point in the relative interior of facet k: maximize the uniform slack
// of the other facets subject to sitting on facet k's hyperplane.
inline std::optional<Eigen::VectorXd> facet_relative_interior_point(const Polytope& p, int k) {
    const int n = p.n_vars;
    LinearProgram lp = LinearProgram::make(n + 1);
    lp.objective.setZero();
    lp.objective(n) = 1.0;
    lp.upper(n) = 1.0;
    lp.a_eq.resize(1, n + 1);
    lp.a_eq.setZero();
    lp.a_eq.row(0).head(n) = p.facets[static_cast<std::size_t>(k)].w.transpose();
    lp.b_eq.resize(1);
    lp.b_eq(0) = -p.facets[static_cast<std::size_t>(k)].u;
    lp.a_ineq.resize(p.n_facets() - 1, n + 1);
    lp.b_ineq.resize(p.n_facets() - 1);
    int row = 0;
    for (int i = 0; i < p.n_facets(); ++i) {
        if (i == k) continue;
        const auto& f = p.facets[static_cast<std::size_t>(i)];
        lp.a_ineq.row(row).head(n) = f.w.transpose();
        lp.a_ineq(row, n) = -f.w.norm();
        lp.b_ineq(row) = -f.u;
        ++row;
    }
    const auto r = lp_solve(lp);
    if (r.status != LpStatus::Optimal || r.value <= 1e-9) return std::nullopt;
    return r.x.head(n).eval();
}

// Vertices of a 2-D polytope by pairwise facet intersection + containment.
inline std::vector<Eigen::Vector2d> polytope_vertices_2d(const Polytope& p) {
    std::vector<Eigen::Vector2d> verts;
    const int k = p.n_facets();
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            Eigen::Matrix2d a;
            a.row(0) = p.facets[static_cast<std::size_t>(i)].w.transpose();
            a.row(1) = p.facets[static_cast<std::size_t>(j)].w.transpose();
            if (std::abs(a.determinant()) < 1e-12) continue;
            Eigen::Vector2d b(-p.facets[static_cast<std::size_t>(i)].u,
                              -p.facets[static_cast<std::size_t>(j)].u);
            Eigen::Vector2d x = a.colPivHouseholderQr().solve(b);
            if (!p.contains(x, 1e-9)) continue;
            bool dup = false;
            for (const auto& v : verts)
                if ((v - x).norm() < 1e-9) dup = true;
            if (!dup) verts.push_back(x);
        }
    return verts;
}

}  // namespace polycert
