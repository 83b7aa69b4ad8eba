#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace polycert {

// Multi-index of monomial exponents, one entry per variable.
using Exponent = std::vector<int>;

inline int degree(const Exponent& a) {
    return std::accumulate(a.begin(), a.end(), 0);
}

// Graded lexicographic order: total degree first, then lexicographic.
// Used as the canonical term order everywhere so that iteration,
// serialization and reports are deterministic.
struct GradedLexLess {
    bool operator()(const Exponent& a, const Exponent& b) const {
        const int da = degree(a), db = degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

inline Exponent operator+(const Exponent& a, const Exponent& b) {
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace detail {
inline void enumerate_rec(int pos, int remaining, bool exact, Exponent& cur,
                          std::vector<Exponent>& out) {
    if (pos == static_cast<int>(cur.size())) {
        if (!exact || remaining == 0) out.push_back(cur);
        return;
    }
    for (int k = 0; k <= remaining; ++k) {
        cur[pos] = k;
        enumerate_rec(pos + 1, remaining - k, exact, cur, out);
    }
    cur[pos] = 0;
}
}  // namespace detail

// All alpha in N^l with sum(alpha) == d, in graded lex order. |result| = C(l-1+d, d).
inline std::vector<Exponent> exponents_exact_degree(int l, int d) {
    std::vector<Exponent> out;
    Exponent cur(l, 0);
    detail::enumerate_rec(0, d, true, cur, out);
    std::sort(out.begin(), out.end(), GradedLexLess{});
    return out;
}

// All alpha in N^l with sum(alpha) <= d, in graded lex order. |result| = C(l+d, d).
inline std::vector<Exponent> exponents_up_to_degree(int l, int d) {
    std::vector<Exponent> out;
    Exponent cur(l, 0);
    detail::enumerate_rec(0, d, false, cur, out);
    std::sort(out.begin(), out.end(), GradedLexLess{});
    return out;
}

// All alpha with alpha_i <= box_i componentwise, in graded lex order.
inline std::vector<Exponent> exponents_in_box(const std::vector<int>& box) {
    std::vector<Exponent> out;
    Exponent cur(box.size(), 0);
    std::size_t total = 1;
    for (int b : box) {
        if (b < 0) throw std::invalid_argument("exponents_in_box: negative bound");
        total *= static_cast<std::size_t>(b) + 1;
    }
    out.reserve(total);
    out.push_back(cur);
    while (true) {
        std::size_t i = 0;
        while (i < box.size() && cur[i] == box[i]) cur[i++] = 0;
        if (i == box.size()) break;
        ++cur[i];
        out.push_back(cur);
    }
    std::sort(out.begin(), out.end(), GradedLexLess{});
    return out;
}

}  // namespace polycert
