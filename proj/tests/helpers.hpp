#pragma once

#include <Eigen/Dense>
#include <functional>
#include <random>
#include <vector>

#include "polycert/domains.hpp"
#include "polycert/lp_solver.hpp"
#include "polycert/polynomial.hpp"

// Test-only oracles, independent of the certificate code paths: brute-force
// grid minima and random point generators over the supported domains.
namespace oracles {

using polycert::Polynomial;

// All lattice points k/steps on the unit simplex, k in N^n summing to steps.
inline void simplex_lattice_rec(int pos, int remaining, int steps, std::vector<double>& cur,
                                const std::function<void(const std::vector<double>&)>& fn) {
    const int n = static_cast<int>(cur.size());
    if (pos == n - 1) {
        cur[pos] = static_cast<double>(remaining) / steps;
        fn(cur);
        return;
    }
    for (int k = 0; k <= remaining; ++k) {
        cur[pos] = static_cast<double>(k) / steps;
        simplex_lattice_rec(pos + 1, remaining - k, steps, cur, fn);
    }
}

inline double grid_min_simplex(const Polynomial& f, int steps) {
    double best = polycert::kInf;
    std::vector<double> x(static_cast<std::size_t>(f.n_vars()));
    simplex_lattice_rec(0, steps, steps, x,
                        [&](const std::vector<double>& p) { best = std::min(best, f.evaluate(p)); });
    return best;
}

inline double grid_min_box(const Polynomial& f, const polycert::Hypercube& box, int steps) {
    const int n = f.n_vars();
    double best = polycert::kInf;
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    std::vector<double> x(static_cast<std::size_t>(n));
    while (true) {
        for (int i = 0; i < n; ++i)
            x[i] = box.centers(i) - box.radii(i) + 2.0 * box.radii(i) * idx[i] / steps;
        best = std::min(best, f.evaluate(x));
        int i = 0;
        while (i < n && idx[i] == steps) idx[i++] = 0;
        if (i == n) break;
        ++idx[i];
    }
    return best;
}

inline std::vector<Eigen::VectorXd> random_simplex_points(int n, int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::exponential_distribution<double> exp1(1.0);
    std::vector<Eigen::VectorXd> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        Eigen::VectorXd x(n);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            x(i) = exp1(rng);
            sum += x(i);
        }
        pts.push_back(x / sum);
    }
    return pts;
}

inline std::vector<Eigen::VectorXd> random_box_points(const polycert::Hypercube& box, int count,
                                                      unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<Eigen::VectorXd> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        Eigen::VectorXd z(box.n());
        for (int i = 0; i < box.n(); ++i) z(i) = box.centers(i) + box.radii(i) * uni(rng);
        pts.push_back(z);
    }
    return pts;
}

inline Polynomial random_polynomial(int n_vars, int max_degree, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    Polynomial p(n_vars);
    for (const auto& e : polycert::exponents_up_to_degree(n_vars, max_degree))
        p.add_term(e, uni(rng));
    p.prune();
    return p;
}

}  // namespace oracles
