#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace polycert {

struct BisectionStep {
    double value = 0.0;
    bool feasible = false;
    int level = 0;  // hierarchy level used (Polya exponent, Handelman degree, ...)
};

using BisectionTrace = std::vector<BisectionStep>;

struct BisectionOptions {
    double lo = 0.0;
    double hi = 1.0;
    double tol = 1e-2;
};

struct BisectionOutcome {
    double certified = 0.0;  // last feasible probe, never a midpoint
    int level_at_certified = 0;
    BisectionTrace trace;
};

// probe(value) -> (feasible, level). Feasibility must be monotone: feasible
// below some threshold, infeasible above. Throws if the lower end is
// infeasible; a feasible upper end short-circuits.
inline BisectionOutcome bisect_max_feasible(
    const BisectionOptions& opts, const std::function<std::pair<bool, int>(double)>& probe) {
    if (!(opts.hi >= opts.lo)) throw std::invalid_argument("bisection: empty bracket");
    BisectionOutcome out;
    auto [lo_ok, lo_level] = probe(opts.lo);
    out.trace.push_back({opts.lo, lo_ok, lo_level});
    if (!lo_ok) throw std::runtime_error("bisection: bracket lower end is infeasible");
    out.certified = opts.lo;
    out.level_at_certified = lo_level;

    auto [hi_ok, hi_level] = probe(opts.hi);
    out.trace.push_back({opts.hi, hi_ok, hi_level});
    if (hi_ok) {
        out.certified = opts.hi;
        out.level_at_certified = hi_level;
        return out;
    }
    double lo = opts.lo, hi = opts.hi;
    while (hi - lo > opts.tol) {
        const double mid = 0.5 * (lo + hi);
        auto [ok, level] = probe(mid);
        out.trace.push_back({mid, ok, level});
        if (ok) {
            lo = mid;
            out.certified = mid;
            out.level_at_certified = level;
        } else {
            hi = mid;
        }
    }
    return out;
}

// Mirror image: feasible above some threshold; returns the smallest
// certified value (used for H-infinity gamma bisection).
inline BisectionOutcome bisect_min_feasible(
    const BisectionOptions& opts, const std::function<std::pair<bool, int>(double)>& probe) {
    BisectionOutcome out = bisect_max_feasible(
        {-opts.hi, -opts.lo, opts.tol},
        [&](double v) { return probe(-v); });
    out.certified = -out.certified;
    for (auto& s : out.trace) s.value = -s.value;
    return out;
}

}  // namespace polycert
