#pragma once

#include <Eigen/Dense>
#include <map>
#include <stdexcept>
#include <vector>

#include "polycert/polynomial.hpp"
#include "polycert/sdp_solver.hpp"

namespace polycert {

// One linear term scale * L * X * R (or scale * L * X^T * R) acting on a
// matrix unknown. L and R carry embeddings into larger blocks as well as
// products with constant matrices.
struct LinearMatrixTerm {
    int unknown = 0;
    double scale = 1.0;
    Eigen::MatrixXd left;
    Eigen::MatrixXd right;
    bool transposed = false;
};

// Affine matrix-valued expression constant + sum of linear terms.
struct AffineMatrixExpr {
    Eigen::MatrixXd constant;
    std::vector<LinearMatrixTerm> terms;

    int rows() const { return static_cast<int>(constant.rows()); }
    int cols() const { return static_cast<int>(constant.cols()); }

    static AffineMatrixExpr zero(int r, int c) {
        return {Eigen::MatrixXd::Zero(r, c), {}};
    }
    static AffineMatrixExpr of_constant(const Eigen::MatrixXd& m) { return {m, {}}; }
    static AffineMatrixExpr of_unknown(int unknown, int r, int c) {
        AffineMatrixExpr e = zero(r, c);
        e.terms.push_back({unknown, 1.0, Eigen::MatrixXd::Identity(r, r),
                           Eigen::MatrixXd::Identity(c, c), false});
        return e;
    }

    void add(const AffineMatrixExpr& other, double s = 1.0) {
        constant += s * other.constant;
        for (auto t : other.terms) {
            t.scale *= s;
            terms.push_back(std::move(t));
        }
    }
    AffineMatrixExpr scaled(double s) const {
        AffineMatrixExpr e = *this;
        e.constant *= s;
        for (auto& t : e.terms) t.scale *= s;
        return e;
    }
    AffineMatrixExpr left_mul(const Eigen::MatrixXd& m) const {
        AffineMatrixExpr e;
        e.constant = m * constant;
        e.terms = terms;
        for (auto& t : e.terms) t.left = m * t.left;
        return e;
    }
    AffineMatrixExpr right_mul(const Eigen::MatrixXd& m) const {
        AffineMatrixExpr e;
        e.constant = constant * m;
        e.terms = terms;
        for (auto& t : e.terms) t.right = t.right * m;
        return e;
    }
    AffineMatrixExpr transpose() const {
        AffineMatrixExpr e;
        e.constant = constant.transpose();
        for (const auto& t : terms)
            e.terms.push_back(
                {t.unknown, t.scale, t.right.transpose(), t.left.transpose(), !t.transposed});
        return e;
    }

    Eigen::MatrixXd evaluate(const std::vector<Eigen::MatrixXd>& unknowns) const {
        Eigen::MatrixXd m = constant;
        for (const auto& t : terms) {
            const Eigen::MatrixXd& x = unknowns.at(static_cast<std::size_t>(t.unknown));
            m += t.scale * t.left * (t.transposed ? x.transpose() : x) * t.right;
        }
        return m;
    }
};

// Matrix polynomial whose coefficients are affine in a set of matrix
// unknowns; the bridge between Lyapunov/H-infinity conditions and SDP data.
class ParametricMatrixPoly {
  public:
    using TermMap = std::map<Exponent, AffineMatrixExpr, GradedLexLess>;

    ParametricMatrixPoly(int n_vars, int rows, int cols)
        : n_vars_(n_vars), rows_(rows), cols_(cols) {}

    int n_vars() const { return n_vars_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const TermMap& terms() const { return terms_; }

    // P(alpha) = sum_h X_h alpha^h for unknown ids aligned with exponents.
    static ParametricMatrixPoly from_unknowns(int n_vars, int dim,
                                              const std::vector<Exponent>& exponents,
                                              const std::vector<int>& unknown_ids) {
        ParametricMatrixPoly p(n_vars, dim, dim);
        for (std::size_t i = 0; i < exponents.size(); ++i)
            p.add_term(exponents[i], AffineMatrixExpr::of_unknown(unknown_ids[i], dim, dim));
        return p;
    }

    static ParametricMatrixPoly from_constant(const MatrixPolynomial& m) {
        ParametricMatrixPoly p(m.n_vars(), static_cast<int>(m.zero_prototype().rows()),
                               static_cast<int>(m.zero_prototype().cols()));
        for (const auto& [e, c] : m.terms()) p.add_term(e, AffineMatrixExpr::of_constant(c));
        return p;
    }

    void add_term(const Exponent& e, const AffineMatrixExpr& expr) {
        auto [it, inserted] = terms_.emplace(e, expr);
        if (!inserted) it->second.add(expr);
    }
    void add_term_scaled(const Exponent& e, const AffineMatrixExpr& expr, double s) {
        auto [it, inserted] = terms_.emplace(e, expr.scaled(s));
        if (!inserted) it->second.add(expr, s);
    }

    void add(const ParametricMatrixPoly& other, double s = 1.0) {
        for (const auto& [e, expr] : other.terms_) add_term_scaled(e, expr, s);
    }

    ParametricMatrixPoly transpose() const {
        ParametricMatrixPoly p(n_vars_, cols_, rows_);
        for (const auto& [e, expr] : terms_) p.add_term(e, expr.transpose());
        return p;
    }

    // m(alpha) * P(alpha) with a constant matrix polynomial on the left.
    ParametricMatrixPoly left_multiply(const MatrixPolynomial& m) const {
        ParametricMatrixPoly p(n_vars_, static_cast<int>(m.zero_prototype().rows()), cols_);
        for (const auto& [em, cm] : m.terms())
            for (const auto& [ep, expr] : terms_) p.add_term(em + ep, expr.left_mul(cm));
        return p;
    }
    ParametricMatrixPoly right_multiply(const MatrixPolynomial& m) const {
        ParametricMatrixPoly p(n_vars_, rows_, static_cast<int>(m.zero_prototype().cols()));
        for (const auto& [em, cm] : m.terms())
            for (const auto& [ep, expr] : terms_) p.add_term(em + ep, expr.right_mul(cm));
        return p;
    }

    ParametricMatrixPoly scalar_poly_multiply(const Polynomial& s) const {
        ParametricMatrixPoly p(n_vars_, rows_, cols_);
        for (const auto& [es, cs] : s.terms())
            for (const auto& [ep, expr] : terms_) p.add_term_scaled(es + ep, expr, cs);
        return p;
    }

    ParametricMatrixPoly derivative(int i) const {
        ParametricMatrixPoly p(n_vars_, rows_, cols_);
        for (const auto& [e, expr] : terms_) {
            const int k = e[static_cast<std::size_t>(i)];
            if (k == 0) continue;
            Exponent e2 = e;
            --e2[static_cast<std::size_t>(i)];
            p.add_term_scaled(e2, expr, static_cast<double>(k));
        }
        return p;
    }

    // q(y) = P(M y + b) expanded into the new variables.
    ParametricMatrixPoly affine_substitute(const Eigen::MatrixXd& m,
                                           const Eigen::VectorXd& b) const {
        if (m.rows() != n_vars_ || b.size() != n_vars_)
            throw std::invalid_argument("parametric affine_substitute: dimension mismatch");
        const int n_new = static_cast<int>(m.cols());
        std::vector<Polynomial> forms;
        for (int i = 0; i < n_vars_; ++i) {
            Polynomial f = Polynomial::constant(n_new, b(i));
            for (int j = 0; j < n_new; ++j) {
                if (m(i, j) == 0.0) continue;
                Exponent e(static_cast<std::size_t>(n_new), 0);
                e[static_cast<std::size_t>(j)] = 1;
                f.add_term(e, m(i, j));
            }
            f.prune();
            forms.push_back(f);
        }
        ParametricMatrixPoly p(n_new, rows_, cols_);
        for (const auto& [e, expr] : terms_) {
            Polynomial mono = Polynomial::constant(n_new, 1.0);
            for (int i = 0; i < n_vars_; ++i)
                for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k)
                    mono = mono * forms[static_cast<std::size_t>(i)];
            for (const auto& [em, cm] : mono.terms()) p.add_term_scaled(em, expr, cm);
        }
        return p;
    }

    // Per-variable max degrees (for multi-homogenization).
    std::vector<int> degree_profile() const {
        std::vector<int> d(static_cast<std::size_t>(n_vars_), 0);
        for (const auto& [e, expr] : terms_)
            for (int i = 0; i < n_vars_; ++i)
                d[static_cast<std::size_t>(i)] = std::max(d[static_cast<std::size_t>(i)],
                                                          e[static_cast<std::size_t>(i)]);
        return d;
    }

    int degree() const {
        int d = 0;
        for (const auto& [e, expr] : terms_) d = std::max(d, polycert::degree(e));
        return d;
    }

    Eigen::MatrixXd evaluate(const Eigen::VectorXd& x,
                             const std::vector<Eigen::MatrixXd>& unknowns) const {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(rows_, cols_);
        for (const auto& [e, expr] : terms_) {
            double mono = 1.0;
            for (int i = 0; i < n_vars_; ++i)
                for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) mono *= x(i);
            acc += mono * expr.evaluate(unknowns);
        }
        return acc;
    }

  private:
    int n_vars_, rows_, cols_;
    TermMap terms_;
};

// Homogenize every term to total degree d by padding with (sum alpha_i)^k.
inline ParametricMatrixPoly homogenize_parametric(const ParametricMatrixPoly& p, int d) {
    if (d < p.degree())
        throw std::invalid_argument("homogenize_parametric: degree below polynomial degree");
    const Polynomial s = simplex_form(p.n_vars());
    ParametricMatrixPoly out(p.n_vars(), p.rows(), p.cols());
    std::map<int, Polynomial> powers;
    for (const auto& [e, expr] : p.terms()) {
        const int k = d - degree(e);
        auto it = powers.find(k);
        if (it == powers.end()) it = powers.emplace(k, poly_power(s, k)).first;
        for (const auto& [es, cs] : it->second.terms()) out.add_term_scaled(e + es, expr, cs);
    }
    return out;
}

// Multi-homogenization of a parametric poly over a box: the parametric
// analogue of multi_homogenize. Returns the lifted poly in 2n variables
// (x then y halves) together with the degree vector.
struct ParametricMultiHomog {
    std::vector<int> degree_vec;
    ParametricMatrixPoly poly;  // in 2 * n_pairs variables
};

inline ParametricMultiHomog multi_homogenize_parametric(const ParametricMatrixPoly& p,
                                                        const Hypercube& box) {
    const int n = p.n_vars();
    if (box.n() != n)
        throw std::invalid_argument("multi_homogenize_parametric: box dimension mismatch");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = 2.0 * box.radii(i);
        b(i) = box.centers(i) - box.radii(i);
    }
    const ParametricMatrixPoly q = p.affine_substitute(m, b);
    const std::vector<int> d = q.degree_profile();

    ParametricMatrixPoly lifted(2 * n, p.rows(), p.cols());
    for (const auto& [e, expr] : q.terms()) {
        std::vector<int> deficit(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            deficit[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(i)] - e[static_cast<std::size_t>(i)];
        const Polynomial pad = pair_multiplier(n, deficit);
        Exponent lift(static_cast<std::size_t>(2 * n), 0);
        for (int i = 0; i < n; ++i) lift[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(i)];
        for (const auto& [ep, cp] : pad.terms()) lifted.add_term_scaled(lift + ep, expr, cp);
    }
    return {d, lifted};
}

// Elevate a parametric multi-homogeneous poly to a larger degree vector.
inline ParametricMultiHomog elevate_parametric(const ParametricMultiHomog& p,
                                               const std::vector<int>& target) {
    const int l = static_cast<int>(p.degree_vec.size());
    std::vector<int> deficit(static_cast<std::size_t>(l));
    bool same = true;
    for (int i = 0; i < l; ++i) {
        deficit[static_cast<std::size_t>(i)] = target[static_cast<std::size_t>(i)] - p.degree_vec[static_cast<std::size_t>(i)];
        if (deficit[static_cast<std::size_t>(i)] < 0)
            throw std::invalid_argument("elevate_parametric: target below current degree");
        same = same && deficit[static_cast<std::size_t>(i)] == 0;
    }
    if (same) return p;
    return {target, p.poly.scalar_poly_multiply(pair_multiplier(l, deficit))};
}

// One PSD block per monomial: sign * expr(monomial) >= margin. Expressions
// must be symmetric up to roundoff; they are symmetrized on extraction.
inline std::vector<SdpBlock> parametric_to_blocks(const ParametricMatrixPoly& p,
                                                  const VariableSpace& vars, double sign) {
    if (p.rows() != p.cols())
        throw std::invalid_argument("parametric_to_blocks: non-square expression");
    std::vector<SdpBlock> blocks;
    const int dim = p.rows();
    for (const auto& [mono, expr] : p.terms()) {
        SdpBlock blk;
        const double casym = (expr.constant - expr.constant.transpose()).cwiseAbs().maxCoeff();
        if (casym > 1e-8 * (1.0 + expr.constant.cwiseAbs().maxCoeff()))
            throw std::logic_error("parametric_to_blocks: non-symmetric constant");
        blk.constant = 0.5 * sign * (expr.constant + expr.constant.transpose());
        std::map<int, Eigen::MatrixXd> coeff_by_var;
        for (const auto& t : expr.terms) {
            const auto& info = vars.info(t.unknown);
            for (int local = 0; local < info.count; ++local) {
                auto [pp, qq] = vars.entry(t.unknown, local);
                // basis matrix E for this scalar entry (symmetrized pair for
                // symmetric unknowns)
                Eigen::MatrixXd contrib;
                auto outer = [&](int r, int c) -> Eigen::MatrixXd {
                    // L * E_rc * R = L.col(r) * R.row(c), transposed handled by swap
                    if (!t.transposed) return t.left.col(r) * t.right.row(c);
                    return t.left.col(c) * t.right.row(r);
                };
                contrib = outer(pp, qq);
                if (info.symmetric && pp != qq) contrib += outer(qq, pp);
                contrib *= t.scale;
                auto [it, inserted] =
                    coeff_by_var.emplace(info.offset + local, sign * contrib);
                if (!inserted) it->second += sign * contrib;
            }
        }
        for (auto& [v, c] : coeff_by_var) {
            const double asym = (c - c.transpose()).cwiseAbs().maxCoeff();
            if (asym > 1e-8 * (1.0 + c.cwiseAbs().maxCoeff()))
                throw std::logic_error("parametric_to_blocks: non-symmetric coefficient");
            Eigen::MatrixXd sym = 0.5 * (c + c.transpose());
            if (sym.cwiseAbs().maxCoeff() <= 1e-14) continue;
            blk.terms.emplace_back(v, std::move(sym));
        }
        if (blk.constant.rows() != dim)
            throw std::logic_error("parametric_to_blocks: inconsistent dims");
        blocks.push_back(std::move(blk));
    }
    return blocks;
}

}  // namespace polycert
