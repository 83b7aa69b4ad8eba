#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "polycert/exponent.hpp"

namespace polycert {

// Coefficient operations for the two supported coefficient types:
// plain doubles and dense symmetric/general matrices.
template <class T>
struct CoeffOps;

template <>
struct CoeffOps<double> {
    static double zero_like(double) { return 0.0; }
    static double norm(double c) { return std::abs(c); }
    static bool is_exactly_zero(double c) { return c == 0.0; }
    static double scaled(double c, double s) { return c * s; }
    static void add_scaled(double& acc, double c, double s) { acc += c * s; }
};

template <>
struct CoeffOps<Eigen::MatrixXd> {
    static Eigen::MatrixXd zero_like(const Eigen::MatrixXd& m) {
        return Eigen::MatrixXd::Zero(m.rows(), m.cols());
    }
    static double norm(const Eigen::MatrixXd& c) { return c.cwiseAbs().maxCoeff(); }
    static bool is_exactly_zero(const Eigen::MatrixXd& c) { return c.isZero(0.0); }
    static Eigen::MatrixXd scaled(const Eigen::MatrixXd& c, double s) { return c * s; }
    static void add_scaled(Eigen::MatrixXd& acc, const Eigen::MatrixXd& c, double s) {
        acc += c * s;
    }
};

// Sparse multivariate polynomial with coefficients of type T (double or
// Eigen::MatrixXd). Terms are kept in graded lex order; coefficients whose
// norm falls below a relative tolerance of the largest coefficient are
// dropped on prune().
template <class T>
class PolynomialT {
  public:
    using Ops = CoeffOps<T>;
    using TermMap = std::map<Exponent, T, GradedLexLess>;

    static constexpr double kDropRel = 1e-12;

    PolynomialT() : n_vars_(0), zero_(T{}) {}
    explicit PolynomialT(int n_vars, T zero_prototype = T{})
        : n_vars_(n_vars), zero_(Ops::zero_like(zero_prototype)) {}

    static PolynomialT constant(int n_vars, const T& c) {
        PolynomialT p(n_vars, c);
        p.add_term(Exponent(n_vars, 0), c);
        return p;
    }
    static PolynomialT monomial(int n_vars, const Exponent& e, const T& c) {
        if (static_cast<int>(e.size()) != n_vars)
            throw std::invalid_argument("monomial: exponent length mismatch");
        PolynomialT p(n_vars, c);
        p.add_term(e, c);
        return p;
    }
    // x_i as a polynomial (scalar coefficients only).
    static PolynomialT variable(int n_vars, int i) {
        static_assert(std::is_same_v<T, double>);
        Exponent e(n_vars, 0);
        e.at(i) = 1;
        return monomial(n_vars, e, 1.0);
    }

    int n_vars() const { return n_vars_; }
    const TermMap& terms() const { return terms_; }
    const T& zero_prototype() const { return zero_; }
    bool empty() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    const T& coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? zero_ : it->second;
    }

    void add_term(const Exponent& e, const T& c) {
        if (static_cast<int>(e.size()) != n_vars_)
            throw std::invalid_argument("add_term: exponent length mismatch");
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) Ops::add_scaled(it->second, c, 1.0);
    }
    void add_term_scaled(const Exponent& e, const T& c, double s) {
        auto [it, inserted] = terms_.emplace(e, Ops::scaled(c, s));
        if (!inserted) Ops::add_scaled(it->second, c, s);
    }

    double max_coeff_norm() const {
        double m = 0.0;
        for (const auto& [e, c] : terms_) m = std::max(m, Ops::norm(c));
        return m;
    }

    // Drop coefficients below kDropRel relative to the largest one.
    PolynomialT& prune() {
        const double cutoff = kDropRel * max_coeff_norm();
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (Ops::norm(it->second) <= cutoff)
                it = terms_.erase(it);
            else
                ++it;
        }
        return *this;
    }

    int degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, polycert::degree(e));
        return d;
    }

    // Degree of variable i across all terms.
    int degree_in(int i) const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(i)]);
        return d;
    }

    bool is_homogeneous(int* deg_out = nullptr) const {
        if (terms_.empty()) {
            if (deg_out) *deg_out = 0;
            return true;
        }
        const int d = polycert::degree(terms_.begin()->first);
        for (const auto& [e, c] : terms_)
            if (polycert::degree(e) != d) return false;
        if (deg_out) *deg_out = d;
        return true;
    }

    PolynomialT operator+(const PolynomialT& o) const {
        check_same_vars(o);
        PolynomialT r(*this);
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        r.prune();
        return r;
    }
    PolynomialT operator-(const PolynomialT& o) const {
        check_same_vars(o);
        PolynomialT r(*this);
        for (const auto& [e, c] : o.terms_) r.add_term_scaled(e, c, -1.0);
        r.prune();
        return r;
    }
    PolynomialT operator*(double s) const {
        PolynomialT r(n_vars_, zero_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, Ops::scaled(c, s));
        r.prune();
        return r;
    }

    T evaluate(std::span<const double> x) const {
        if (static_cast<int>(x.size()) != n_vars_)
            throw std::invalid_argument("evaluate: dimension mismatch");
        T acc = zero_;
        for (const auto& [e, c] : terms_) {
            double m = 1.0;
            for (int i = 0; i < n_vars_; ++i) {
                const int k = e[static_cast<std::size_t>(i)];
                for (int j = 0; j < k; ++j) m *= x[static_cast<std::size_t>(i)];
            }
            Ops::add_scaled(acc, c, m);
        }
        return acc;
    }
    T evaluate(const std::vector<double>& x) const {
        return evaluate(std::span<const double>(x.data(), x.size()));
    }
    T evaluate(const Eigen::VectorXd& x) const {
        return evaluate(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
    }

    PolynomialT derivative(int i) const {
        PolynomialT r(n_vars_, zero_);
        for (const auto& [e, c] : terms_) {
            const int k = e[static_cast<std::size_t>(i)];
            if (k == 0) continue;
            Exponent e2 = e;
            --e2[static_cast<std::size_t>(i)];
            r.add_term_scaled(e2, c, static_cast<double>(k));
        }
        return r;
    }

    void check_same_vars(const PolynomialT& o) const {
        if (n_vars_ != o.n_vars_)
            throw std::invalid_argument("polynomial operands have mismatched n_vars");
    }

  private:
    int n_vars_;
    T zero_;
    TermMap terms_;
};

using Polynomial = PolynomialT<double>;
using MatrixPolynomial = PolynomialT<Eigen::MatrixXd>;

// Exact product of two scalar polynomials.
inline Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    p.check_same_vars(q);
    Polynomial r(p.n_vars());
    for (const auto& [ea, ca] : p.terms())
        for (const auto& [eb, cb] : q.terms()) r.add_term_scaled(ea + eb, cb, ca);
    r.prune();
    return r;
}

// Product of a coefficient-valued polynomial with a scalar polynomial.
template <class T>
PolynomialT<T> scalar_multiply(const PolynomialT<T>& p, const Polynomial& s) {
    if (p.n_vars() != s.n_vars())
        throw std::invalid_argument("scalar_multiply: operands have mismatched n_vars");
    PolynomialT<T> r(p.n_vars(), p.zero_prototype());
    for (const auto& [ea, ca] : p.terms())
        for (const auto& [eb, cb] : s.terms()) r.add_term_scaled(ea + eb, ca, cb);
    r.prune();
    return r;
}

inline Polynomial simplex_form(int n_vars) {
    Polynomial s(n_vars);
    for (int i = 0; i < n_vars; ++i) {
        Exponent e(n_vars, 0);
        e[static_cast<std::size_t>(i)] = 1;
        s.add_term(e, 1.0);
    }
    return s;
}

inline Polynomial poly_power(const Polynomial& p, int e) {
    Polynomial r = Polynomial::constant(p.n_vars(), 1.0);
    for (int i = 0; i < e; ++i) r = r * p;
    return r;
}

// (x_1 + ... + x_n)^e * p; requires p homogeneous.
template <class T>
PolynomialT<T> simplex_multiply(const PolynomialT<T>& p, int e) {
    if (!p.is_homogeneous())
        throw std::invalid_argument("simplex_multiply: polynomial is not homogeneous");
    if (e == 0) return p;
    return scalar_multiply(p, poly_power(simplex_form(p.n_vars()), e));
}

// Homogenize to degree d by multiplying each monomial by (sum x_i)^(d - |alpha|).
// Agrees with p on the unit simplex.
template <class T>
PolynomialT<T> homogenize(const PolynomialT<T>& p, int d) {
    if (d < p.degree())
        throw std::invalid_argument("homogenize: target degree below polynomial degree");
    const Polynomial s = simplex_form(p.n_vars());
    PolynomialT<T> r(p.n_vars(), p.zero_prototype());
    std::map<int, Polynomial> powers;
    for (const auto& [e, c] : p.terms()) {
        const int k = d - degree(e);
        auto it = powers.find(k);
        if (it == powers.end()) it = powers.emplace(k, poly_power(s, k)).first;
        for (const auto& [es, cs] : it->second.terms()) r.add_term_scaled(e + es, c, cs);
    }
    r.prune();
    return r;
}

// q(y) = p(M y + b), expanded. M is n_vars x n_new.
template <class T>
PolynomialT<T> affine_substitute(const PolynomialT<T>& p, const Eigen::MatrixXd& m,
                                 const Eigen::VectorXd& b) {
    if (m.rows() != p.n_vars() || b.size() != p.n_vars())
        throw std::invalid_argument("affine_substitute: dimension mismatch");
    const int n_new = static_cast<int>(m.cols());
    // Affine forms M_i y + b_i as degree-1 polynomials in the new variables.
    std::vector<Polynomial> forms;
    forms.reserve(static_cast<std::size_t>(p.n_vars()));
    for (int i = 0; i < p.n_vars(); ++i) {
        Polynomial f = Polynomial::constant(n_new, b(i));
        for (int j = 0; j < n_new; ++j) {
            if (m(i, j) == 0.0) continue;
            Exponent e(n_new, 0);
            e[static_cast<std::size_t>(j)] = 1;
            f.add_term(e, m(i, j));
        }
        f.prune();
        forms.push_back(f);
    }
    PolynomialT<T> r(n_new, p.zero_prototype());
    for (const auto& [e, c] : p.terms()) {
        Polynomial mono = Polynomial::constant(n_new, 1.0);
        for (int i = 0; i < p.n_vars(); ++i)
            for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k)
                mono = mono * forms[static_cast<std::size_t>(i)];
        for (const auto& [em, cm] : mono.terms()) r.add_term_scaled(em, c, cm);
    }
    r.prune();
    return r;
}

// L * coef * R applied to every coefficient (block embedding / projection).
inline MatrixPolynomial embed_map(const MatrixPolynomial& p, const Eigen::MatrixXd& l,
                                  const Eigen::MatrixXd& r) {
    MatrixPolynomial out(p.n_vars(), Eigen::MatrixXd::Zero(l.rows(), r.cols()));
    for (const auto& [e, c] : p.terms()) out.add_term(e, l * c * r);
    out.prune();
    return out;
}

inline MatrixPolynomial transpose(const MatrixPolynomial& p) {
    const auto& z = p.zero_prototype();
    MatrixPolynomial out(p.n_vars(), Eigen::MatrixXd::Zero(z.cols(), z.rows()));
    for (const auto& [e, c] : p.terms()) out.add_term(e, c.transpose());
    return out;
}

}  // namespace polycert
