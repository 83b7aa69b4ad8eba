#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "polycert/domains.hpp"
#include "polycert/polynomial.hpp"

namespace polycert {

// Multi-homogeneous polynomial over n pairs (x_i, y_i), homogeneous of
// degree d_i in each pair. Stored as an ordinary polynomial in 2n variables
// ordered x_1..x_n, y_1..y_n, together with the degree vector.
template <class T>
struct MultiHomogT {
    int n_pairs = 0;
    std::vector<int> degree_vec;
    PolynomialT<T> poly;  // in 2*n_pairs variables

    MultiHomogT() = default;
    MultiHomogT(int n, std::vector<int> d, PolynomialT<T> p)
        : n_pairs(n), degree_vec(std::move(d)), poly(std::move(p)) {
        if (poly.n_vars() != 2 * n_pairs)
            throw std::invalid_argument("multihomog: polynomial must have 2n variables");
        for (const auto& [e, c] : poly.terms())
            for (int i = 0; i < n_pairs; ++i)
                if (e[i] + e[i + n_pairs] != degree_vec[i])
                    throw std::invalid_argument("multihomog: term violates degree vector");
    }

    T evaluate_xy(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
        Eigen::VectorXd v(2 * n_pairs);
        v.head(n_pairs) = x;
        v.tail(n_pairs) = y;
        return poly.evaluate(v);
    }

    // Evaluate at the pair point corresponding to z in the box:
    // x_i = (z_i - c_i + r_i) / (2 r_i), y_i = 1 - x_i.
    T evaluate_box_point(const Eigen::VectorXd& z, const Hypercube& box) const {
        if (z.size() != n_pairs) throw std::invalid_argument("evaluate_box_point: dim mismatch");
        Eigen::VectorXd x(n_pairs), y(n_pairs);
        for (int i = 0; i < n_pairs; ++i) {
            x(i) = (z(i) - box.centers(i) + box.radii(i)) / (2.0 * box.radii(i));
            y(i) = 1.0 - x(i);
        }
        return evaluate_xy(x, y);
    }
};

using MultiHomogPolynomial = MultiHomogT<double>;
using MultiHomogMatrixPolynomial = MultiHomogT<Eigen::MatrixXd>;

// prod_i (x_i + y_i)^{e_i} as a polynomial in 2n variables.
inline Polynomial pair_multiplier(int n_pairs, const std::vector<int>& e) {
    Polynomial r = Polynomial::constant(2 * n_pairs, 1.0);
    for (int i = 0; i < n_pairs; ++i) {
        Polynomial s(2 * n_pairs);
        Exponent ex(2 * n_pairs, 0), ey(2 * n_pairs, 0);
        ex[i] = 1;
        ey[i + n_pairs] = 1;
        s.add_term(ex, 1.0);
        s.add_term(ey, 1.0);
        for (int k = 0; k < e[i]; ++k) r = r * s;
    }
    return r;
}

inline Polynomial pair_multiplier(int n_pairs, int e) {
    return pair_multiplier(n_pairs, std::vector<int>(n_pairs, e));
}

// Map a polynomial on the box to a multi-homogeneous polynomial over pair
// simplices: substitute z_i = 2 r_i x_i + (c_i - r_i), then pad every
// monomial with (x_i + y_i) factors up to the per-variable max degree.
template <class T>
MultiHomogT<T> multi_homogenize(const PolynomialT<T>& f, const Hypercube& box) {
    const int n = f.n_vars();
    if (box.n() != n) throw std::invalid_argument("multi_homogenize: box dimension mismatch");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = 2.0 * box.radii(i);
        b(i) = box.centers(i) - box.radii(i);
    }
    const PolynomialT<T> q = affine_substitute(f, m, b);  // on [0,1]^n
    std::vector<int> d(n, 0);
    for (int i = 0; i < n; ++i) d[i] = q.degree_in(i);

    PolynomialT<T> r(2 * n, f.zero_prototype());
    for (const auto& [e, c] : q.terms()) {
        std::vector<int> deficit(n);
        for (int i = 0; i < n; ++i) deficit[i] = d[i] - e[i];
        const Polynomial pad = pair_multiplier(n, deficit);
        Exponent lifted(2 * n, 0);
        for (int i = 0; i < n; ++i) lifted[i] = e[i];
        for (const auto& [ep, cp] : pad.terms()) r.add_term_scaled(lifted + ep, c, cp);
    }
    r.prune();
    return MultiHomogT<T>(n, std::move(d), std::move(r));
}

// prod_i (x_i + y_i)^e * p; degree vector grows by e in every component.
template <class T>
MultiHomogT<T> multisimplex_multiply(const MultiHomogT<T>& p, int e) {
    if (e == 0) return p;
    std::vector<int> d = p.degree_vec;
    for (int& di : d) di += e;
    return MultiHomogT<T>(p.n_pairs, std::move(d),
                          scalar_multiply(p.poly, pair_multiplier(p.n_pairs, e)));
}

// Raise the degree vector to target componentwise by multiplying with
// (x_i + y_i) factors; the function on the multi-simplex is unchanged.
template <class T>
MultiHomogT<T> elevate(const MultiHomogT<T>& p, const std::vector<int>& target) {
    std::vector<int> deficit(p.degree_vec.size());
    bool same = true;
    for (std::size_t i = 0; i < deficit.size(); ++i) {
        deficit[i] = target[i] - p.degree_vec[i];
        if (deficit[i] < 0) throw std::invalid_argument("elevate: target below current degree");
        same = same && deficit[i] == 0;
    }
    if (same) return p;
    return MultiHomogT<T>(p.n_pairs, target,
                          scalar_multiply(p.poly, pair_multiplier(p.n_pairs, deficit)));
}

}  // namespace polycert
