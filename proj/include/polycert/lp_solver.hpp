#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace polycert {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Linear program in the user-facing convention:
//   maximize objective^T x
//   subject to a_eq x = b_eq, a_ineq x >= b_ineq, lower <= x <= upper.
// Empty matrices stand for "no constraints of that kind"; empty bound
// vectors mean free variables.
struct LinearProgram {
    Eigen::VectorXd objective;
    Eigen::MatrixXd a_eq;
    Eigen::VectorXd b_eq;
    Eigen::MatrixXd a_ineq;
    Eigen::VectorXd b_ineq;
    Eigen::VectorXd lower;  // may contain -inf
    Eigen::VectorXd upper;  // may contain +inf

    int n_vars() const { return static_cast<int>(objective.size()); }

    static LinearProgram make(int n) {
        LinearProgram lp;
        lp.objective = Eigen::VectorXd::Zero(n);
        lp.a_eq.resize(0, n);
        lp.b_eq.resize(0);
        lp.a_ineq.resize(0, n);
        lp.b_ineq.resize(0);
        lp.lower = Eigen::VectorXd::Constant(n, -kInf);
        lp.upper = Eigen::VectorXd::Constant(n, kInf);
        return lp;
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    double value = 0.0;
    Eigen::VectorXd x;
    Eigen::VectorXd dual_eq;
    Eigen::VectorXd dual_ineq;
    double duality_gap = 0.0;
    int iterations = 0;
};

struct LpOptions {
    double pivot_tol = 1e-9;
    double feas_tol = 1e-7;
    int max_iters = 200000;
    int stall_limit = 4000;  // degenerate pivots before switching to Bland's rule
};

namespace detail {

// Dense two-phase primal simplex on the standard form
//   min c^T x, A x = b, x >= 0  (b >= 0 after row normalization).
// Dantzig pricing with a permanent switch to Bland's rule after a
// degeneracy stall, which guarantees termination.
class SimplexTableau {
  public:
    SimplexTableau(Eigen::MatrixXd a, Eigen::VectorXd b, Eigen::VectorXd c, LpOptions opts)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), opts_(opts) {
        m_ = static_cast<int>(a_.rows());
        n_ = static_cast<int>(a_.cols());
        for (int i = 0; i < m_; ++i) {
            if (b_(i) < 0) {
                a_.row(i) = -a_.row(i);
                b_(i) = -b_(i);
            }
        }
        // Append artificial columns m_..m_+n_-1 forming the initial basis.
        tab_.resize(m_, n_ + m_);
        tab_.leftCols(n_) = a_;
        tab_.rightCols(m_) = Eigen::MatrixXd::Identity(m_, m_);
        rhs_ = b_;
        basis_.resize(m_);
        in_basis_.assign(static_cast<std::size_t>(n_ + m_), 0);
        for (int i = 0; i < m_; ++i) {
            basis_[i] = n_ + i;
            in_basis_[static_cast<std::size_t>(n_ + i)] = 1;
        }
    }

    // Returns false on infeasible (phase 1) model.
    bool run_phase1() {
        Eigen::VectorXd cost = Eigen::VectorXd::Zero(n_ + m_);
        cost.tail(m_).setOnes();
        set_costs(cost, /*allow_artificial=*/false);
        if (m_ == 0) return true;
        solve_loop(/*phase1=*/true);
        const double scale = 1.0 + rhs_.cwiseAbs().maxCoeff();
        return objective_value() <= opts_.feas_tol * scale;
    }

    // Returns Optimal or Unbounded (IterationLimit on stall out).
    LpStatus run_phase2() {
        Eigen::VectorXd cost = Eigen::VectorXd::Zero(n_ + m_);
        cost.head(n_) = c_;
        set_costs(cost, /*allow_artificial=*/false);
        return solve_loop(/*phase1=*/false);
    }

    double objective_value() const { return obj_; }
    int iterations() const { return iters_; }

    Eigen::VectorXd primal() const {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_) x(basis_[i]) = rhs_(i);
        return x;
    }

    // Duals of the equality rows: y_i = -reduced_cost(artificial_i).
    Eigen::VectorXd duals() const {
        Eigen::VectorXd y(m_);
        for (int i = 0; i < m_; ++i) y(i) = -red_(n_ + i) * row_sign_(i);
        return y;
    }
    // b may have been sign-flipped; report duals for the original rows.
    void record_row_signs(const Eigen::VectorXd& original_b) {
        row_sign_ = Eigen::VectorXd::Ones(m_);
        for (int i = 0; i < m_; ++i)
            if (original_b(i) < 0) row_sign_(i) = -1.0;
    }

  private:
    void set_costs(const Eigen::VectorXd& cost, bool) {
        cost_ = cost;
        red_ = cost_;
        obj_ = 0.0;
        for (int i = 0; i < m_; ++i) {
            const double cb = cost_(basis_[i]);
            if (cb != 0.0) {
                red_ -= cb * tab_.row(i).transpose();
                obj_ += cb * rhs_(i);
            }
        }
    }

    LpStatus solve_loop(bool phase1) {
        bool bland = false;
        int stall = 0;
        while (true) {
            if (iters_ >= opts_.max_iters) return LpStatus::IterationLimit;
            const int enter = pick_entering(phase1, bland);
            if (enter < 0) return LpStatus::Optimal;
            const int leave = pick_leaving(enter, bland);
            if (leave < 0) return LpStatus::Unbounded;
            const double before = obj_;
            pivot(leave, enter);
            ++iters_;
            if (!bland) {
                if (std::abs(obj_ - before) <= 1e-13 * (1.0 + std::abs(before)))
                    ++stall;
                else
                    stall = 0;
                if (stall > opts_.stall_limit) bland = true;
            }
        }
    }

    int pick_entering(bool phase1, bool bland) const {
        const int limit = phase1 ? n_ + m_ : n_;  // artificials never re-enter in phase 2
        if (bland) {
            for (int j = 0; j < limit; ++j)
                if (red_(j) < -opts_.pivot_tol && !is_basic(j)) return j;
            return -1;
        }
        int best = -1;
        double best_val = -opts_.pivot_tol;
        for (int j = 0; j < limit; ++j) {
            if (is_basic(j)) continue;
            if (red_(j) < best_val) {
                best_val = red_(j);
                best = j;
            }
        }
        return best;
    }

    int pick_leaving(int enter, bool bland) const {
        int leave = -1;
        double best_ratio = kInf;
        for (int i = 0; i < m_; ++i) {
            const double a = tab_(i, enter);
            if (a <= opts_.pivot_tol) continue;
            const double ratio = rhs_(i) / a;
            if (ratio < best_ratio - 1e-12) {
                best_ratio = ratio;
                leave = i;
            } else if (ratio < best_ratio + 1e-12 && leave >= 0) {
                // Tie: Bland (smallest leaving variable index) for anti-cycling,
                // otherwise prefer kicking artificials out.
                if (bland ? basis_[i] < basis_[leave]
                          : (basis_[i] >= n_ && basis_[leave] < n_)) {
                    leave = i;
                    best_ratio = std::min(best_ratio, ratio);
                }
            }
        }
        return leave;
    }

    bool is_basic(int j) const { return in_basis_[static_cast<std::size_t>(j)] != 0; }

    void pivot(int row, int col) {
        const double p = tab_(row, col);
        tab_.row(row) /= p;
        rhs_(row) /= p;
        for (int i = 0; i < m_; ++i) {
            if (i == row) continue;
            const double f = tab_(i, col);
            if (f == 0.0) continue;
            tab_.row(i) -= f * tab_.row(row);
            rhs_(i) -= f * rhs_(row);
        }
        const double fr = red_(col);
        if (fr != 0.0) {
            red_ -= fr * tab_.row(row).transpose();
            obj_ += fr * rhs_(row);  // entering at value rhs(row) changes obj by red*theta
        }
        in_basis_[static_cast<std::size_t>(basis_[row])] = 0;
        in_basis_[static_cast<std::size_t>(col)] = 1;
        basis_[row] = col;
    }

    Eigen::MatrixXd a_;
    Eigen::VectorXd b_, c_;
    LpOptions opts_;
    int m_ = 0, n_ = 0;
    Eigen::MatrixXd tab_;
    Eigen::VectorXd rhs_, red_, cost_, row_sign_;
    std::vector<int> basis_;
    std::vector<char> in_basis_;
    double obj_ = 0.0;
    int iters_ = 0;
};

}  // namespace detail

// Two-phase primal simplex for the user-facing LP. Free and bounded
// variables are reduced to the nonnegative standard form internally.
inline LpResult lp_solve(const LinearProgram& lp, const LpOptions& opts = {}) {
    const int n = lp.n_vars();
    const int n_eq = static_cast<int>(lp.b_eq.size());
    const int n_ineq = static_cast<int>(lp.b_ineq.size());
    Eigen::VectorXd lower =
        lp.lower.size() ? lp.lower : Eigen::VectorXd::Constant(n, -kInf);
    Eigen::VectorXd upper = lp.upper.size() ? lp.upper : Eigen::VectorXd::Constant(n, kInf);

    // Column mapping: x_j = shift_j + sign_j * s_first  (+ optional negative part).
    struct ColMap {
        int first = -1, second = -1;  // second >= 0 only for free split
        double shift = 0.0, sign = 1.0;
        bool has_range_row = false;
        double range = 0.0;
    };
    std::vector<ColMap> cols(static_cast<std::size_t>(n));
    int n_std = 0, n_range_rows = 0;
    for (int j = 0; j < n; ++j) {
        auto& cm = cols[static_cast<std::size_t>(j)];
        const double l = lower(j), u = upper(j);
        if (l > u) throw std::invalid_argument("lp_solve: empty variable bound range");
        if (std::isinf(l) && std::isinf(u)) {
            cm.first = n_std++;
            cm.second = n_std++;
        } else if (!std::isinf(l)) {
            cm.first = n_std++;
            cm.shift = l;
            if (!std::isinf(u)) {
                cm.has_range_row = true;
                cm.range = u - l;
                ++n_range_rows;
            }
        } else {
            cm.first = n_std++;
            cm.shift = u;
            cm.sign = -1.0;
        }
    }
    const int n_slack = n_ineq + n_range_rows;
    const int total = n_std + n_slack;
    const int m = n_eq + n_ineq + n_range_rows;

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, total);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(total);
    double const_shift = 0.0;

    auto scatter = [&](int row, int j, double coef) {
        const auto& cm = cols[static_cast<std::size_t>(j)];
        a(row, cm.first) += coef * cm.sign;
        if (cm.second >= 0) a(row, cm.second) -= coef;
        b(row) -= coef * cm.shift;
    };

    for (int i = 0; i < n_eq; ++i) {
        b(i) = lp.b_eq(i);
        for (int j = 0; j < n; ++j)
            if (lp.a_eq(i, j) != 0.0) scatter(i, j, lp.a_eq(i, j));
    }
    // a_ineq x >= b  ->  a_ineq x - s = b.
    for (int i = 0; i < n_ineq; ++i) {
        const int row = n_eq + i;
        b(row) = lp.b_ineq(i);
        for (int j = 0; j < n; ++j)
            if (lp.a_ineq(i, j) != 0.0) scatter(row, j, lp.a_ineq(i, j));
        a(row, n_std + i) = -1.0;
    }
    // Range rows x' + slack = u - l.
    {
        int r = n_eq + n_ineq, s = n_std + n_ineq;
        for (int j = 0; j < n; ++j) {
            const auto& cm = cols[static_cast<std::size_t>(j)];
            if (!cm.has_range_row) continue;
            a(r, cm.first) = 1.0;
            a(r, s) = 1.0;
            b(r) = cm.range;
            ++r;
            ++s;
        }
    }
    // maximize obj -> minimize -obj in standard variables.
    for (int j = 0; j < n; ++j) {
        const double cj = lp.objective(j);
        if (cj == 0.0) continue;
        const auto& cm = cols[static_cast<std::size_t>(j)];
        c(cm.first) += -cj * cm.sign;
        if (cm.second >= 0) c(cm.second) -= -cj;
        const_shift += cj * cm.shift;
    }

    const Eigen::VectorXd b_original = b;
    detail::SimplexTableau tableau(a, b, c, opts);
    tableau.record_row_signs(b_original);

    LpResult res;
    if (!tableau.run_phase1()) {
        res.status = LpStatus::Infeasible;
        res.iterations = tableau.iterations();
        return res;
    }
    res.status = tableau.run_phase2();
    res.iterations = tableau.iterations();
    if (res.status != LpStatus::Optimal) return res;

    const Eigen::VectorXd xs = tableau.primal();
    res.x = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n; ++j) {
        const auto& cm = cols[static_cast<std::size_t>(j)];
        double v = cm.shift + cm.sign * xs(cm.first);
        if (cm.second >= 0) v -= xs(cm.second);
        res.x(j) = v;
    }
    res.value = lp.objective.size() ? lp.objective.dot(res.x) : 0.0;

    // Standard-form duality gap: |c^T x - y^T b| in the minimized model.
    const Eigen::VectorXd y = tableau.duals();
    const double primal_std = c.dot(xs);
    const double dual_std = y.dot(b_original);
    res.duality_gap = std::abs(primal_std - dual_std);
    res.dual_eq = -y.head(n_eq);  // sign back to the maximize convention
    res.dual_ineq = -y.segment(n_eq, n_ineq);
    return res;
}

}  // namespace polycert
