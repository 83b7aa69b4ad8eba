#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "polycert/bisection.hpp"
#include "polycert/multihomog.hpp"
#include "polycert/parametric.hpp"
#include "polycert/sdp_solver.hpp"

namespace polycert {

enum class LyapKind { CommonP, AffineP, HomogeneousP, PolyaSimplex, PolyaHypercube };

// Lyapunov certificate for dx/dt = A(alpha) x over a simplex or hypercube
// parameter domain: V(x, alpha) = x^T P(alpha) x with P given by coefficient
// matrices on the stored exponents.
struct StabilityCertificate {
    LyapKind kind = LyapKind::CommonP;
    int d = 0;              // degree knob (d or d_p)
    int e = 0;              // Polya exponent
    std::vector<int> d_q;   // hypercube degree vector
    double margin = 0.0;    // normalized SDP margin
    int n_params = 0;       // number of uncertain parameters
    std::vector<Exponent> exponents;  // alpha exponents; pair exponents for hypercube
    std::vector<Eigen::MatrixXd> matrices;
    Hypercube box;  // hypercube kind only

    Eigen::MatrixXd eval_p(const Eigen::VectorXd& alpha) const {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(matrices.front().rows(), matrices.front().cols());
        if (kind == LyapKind::PolyaHypercube) {
            const int l = n_params;
            Eigen::VectorXd b(l), h(l);
            for (int i = 0; i < l; ++i) {
                b(i) = (alpha(i) - box.centers(i) + box.radii(i)) / (2.0 * box.radii(i));
                h(i) = 1.0 - b(i);
            }
            for (std::size_t k = 0; k < exponents.size(); ++k) {
                double mono = 1.0;
                const auto& ex = exponents[k];
                for (int i = 0; i < l; ++i) {
                    for (int j = 0; j < ex[static_cast<std::size_t>(i)]; ++j) mono *= b(i);
                    for (int j = 0; j < ex[static_cast<std::size_t>(i + l)]; ++j) mono *= h(i);
                }
                acc += mono * matrices[k];
            }
            return acc;
        }
        for (std::size_t k = 0; k < exponents.size(); ++k) {
            double mono = 1.0;
            const auto& ex = exponents[k];
            for (int i = 0; i < n_params; ++i)
                for (int j = 0; j < ex[static_cast<std::size_t>(i)]; ++j) mono *= alpha(i);
            acc += mono * matrices[k];
        }
        return acc;
    }
};

namespace detail {
// -(A^T E + E A) for every scalar entry E of unknown pid.
inline SdpBlock lyapunov_block(const Eigen::MatrixXd& a, const VariableSpace& vars, int pid) {
    SdpBlock blk;
    const int n = static_cast<int>(a.rows());
    blk.constant = Eigen::MatrixXd::Zero(n, n);
    const auto& info = vars.info(pid);
    for (int local = 0; local < info.count; ++local) {
        auto [i, j] = vars.entry(pid, local);
        Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
        e(i, j) = 1.0;
        e(j, i) = 1.0;
        blk.terms.emplace_back(info.offset + local, -(a.transpose() * e + e * a));
    }
    return blk;
}

inline SdpBlock identity_block(const VariableSpace& vars, int pid) {
    SdpBlock blk;
    const auto& info = vars.info(pid);
    blk.constant = Eigen::MatrixXd::Zero(info.rows, info.cols);
    for (int local = 0; local < info.count; ++local) {
        auto [i, j] = vars.entry(pid, local);
        Eigen::MatrixXd e = Eigen::MatrixXd::Zero(info.rows, info.cols);
        e(i, j) = 1.0;
        e(j, i) = 1.0;
        blk.terms.emplace_back(info.offset + local, e);
    }
    return blk;
}
}  // namespace detail

// Common quadratic Lyapunov function over the vertex polytope:
// P > 0, A_i^T P + P A_i < 0 for every vertex.
inline std::optional<StabilityCertificate> common_lyapunov_vertices(
    const std::vector<Eigen::MatrixXd>& vertices, const SdpOptions& opts = {}) {
    const int n = static_cast<int>(vertices.front().rows());
    BlockSdp sdp;
    const int pid = sdp.vars.add_symmetric("P", n);
    sdp.blocks.push_back(detail::identity_block(sdp.vars, pid));
    for (const auto& a : vertices) sdp.blocks.push_back(detail::lyapunov_block(a, sdp.vars, pid));
    const auto sol = sdp_feasibility(sdp, opts);
    if (!sol.feasible()) return std::nullopt;
    StabilityCertificate cert;
    cert.kind = LyapKind::CommonP;
    cert.margin = sol.margin;
    cert.n_params = static_cast<int>(vertices.size());
    cert.exponents = {Exponent(vertices.size(), 0)};
    cert.matrices = {sol.values.at("P")};
    return cert;
}

// Affine parameter-dependent P(alpha) = sum P_i alpha_i with the vertex and
// cross-term LMI family.
inline std::optional<StabilityCertificate> affine_pd_lyapunov(
    const std::vector<Eigen::MatrixXd>& vertices, const SdpOptions& opts = {}) {
    const int l = static_cast<int>(vertices.size());
    const int n = static_cast<int>(vertices.front().rows());
    BlockSdp sdp;
    std::vector<int> pids;
    for (int i = 0; i < l; ++i) pids.push_back(sdp.vars.add_symmetric("P" + std::to_string(i), n));
    for (int i = 0; i < l; ++i) sdp.blocks.push_back(detail::identity_block(sdp.vars, pids[i]));
    for (int i = 0; i < l; ++i)
        sdp.blocks.push_back(detail::lyapunov_block(vertices[static_cast<std::size_t>(i)], sdp.vars, pids[i]));
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j) {
            SdpBlock blk;
            blk.constant = Eigen::MatrixXd::Zero(n, n);
            const Eigen::MatrixXd& ai = vertices[static_cast<std::size_t>(i)];
            const Eigen::MatrixXd& aj = vertices[static_cast<std::size_t>(j)];
            for (int local = 0; local < sdp.vars.info(pids[i]).count; ++local) {
                auto [p, q] = sdp.vars.entry(pids[i], local);
                Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
                e(p, q) = 1.0;
                e(q, p) = 1.0;
                // P_i couples with A_j and P_j couples with A_i
                blk.terms.emplace_back(sdp.vars.info(pids[i]).offset + local,
                                       -(aj.transpose() * e + e * aj));
                blk.terms.emplace_back(sdp.vars.info(pids[j]).offset + local,
                                       -(ai.transpose() * e + e * ai));
            }
            sdp.blocks.push_back(std::move(blk));
        }
    const auto sol = sdp_feasibility(sdp, opts);
    if (!sol.feasible()) return std::nullopt;
    StabilityCertificate cert;
    cert.kind = LyapKind::AffineP;
    cert.margin = sol.margin;
    cert.n_params = l;
    for (int i = 0; i < l; ++i) {
        Exponent e(static_cast<std::size_t>(l), 0);
        e[static_cast<std::size_t>(i)] = 1;
        cert.exponents.push_back(e);
        cert.matrices.push_back(sol.values.at("P" + std::to_string(i)));
    }
    return cert;
}

// Homogeneous Lyapunov LMI family: P_beta > 0 for beta in I_d and
// sum_{i: beta_i > 0} (A_i^T P_{beta-e_i} + P_{beta-e_i} A_i) < 0 for every
// beta in I_{d+1}.
inline std::optional<StabilityCertificate> homogeneous_lyapunov_simplex(
    const std::vector<Eigen::MatrixXd>& vertices, int d, const SdpOptions& opts = {}) {
    const int l = static_cast<int>(vertices.size());
    const int n = static_cast<int>(vertices.front().rows());
    const auto basis = exponents_exact_degree(l, d);
    BlockSdp sdp;
    std::map<Exponent, int, GradedLexLess> pid_of;
    for (std::size_t k = 0; k < basis.size(); ++k)
        pid_of[basis[k]] = sdp.vars.add_symmetric("P" + std::to_string(k), n);
    for (const auto& beta : basis)
        sdp.blocks.push_back(detail::identity_block(sdp.vars, pid_of.at(beta)));
    for (const auto& beta : exponents_exact_degree(l, d + 1)) {
        SdpBlock blk;
        blk.constant = Eigen::MatrixXd::Zero(n, n);
        std::map<int, std::vector<Eigen::MatrixXd>> acc;  // pid -> list of A_i couplings
        for (int i = 0; i < l; ++i) {
            if (beta[static_cast<std::size_t>(i)] == 0) continue;
            Exponent prev = beta;
            --prev[static_cast<std::size_t>(i)];
            const int pid = pid_of.at(prev);
            const auto& info = sdp.vars.info(pid);
            const Eigen::MatrixXd& a = vertices[static_cast<std::size_t>(i)];
            for (int local = 0; local < info.count; ++local) {
                auto [p, q] = sdp.vars.entry(pid, local);
                Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
                e(p, q) = 1.0;
                e(q, p) = 1.0;
                blk.terms.emplace_back(info.offset + local, -(a.transpose() * e + e * a));
            }
        }
        sdp.blocks.push_back(std::move(blk));
    }
    const auto sol = sdp_feasibility(sdp, opts);
    if (!sol.feasible()) return std::nullopt;
    StabilityCertificate cert;
    cert.kind = LyapKind::HomogeneousP;
    cert.d = d;
    cert.margin = sol.margin;
    cert.n_params = l;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        cert.exponents.push_back(basis[k]);
        cert.matrices.push_back(sol.values.at("P" + std::to_string(k)));
    }
    return cert;
}

// Polya-expanded stability SDP over the simplex for a homogeneous matrix
// polynomial A(alpha): one PSD block per monomial of
//   (sum a_i)^e (P - gamma I (sum a_i)^dp)            (positive family)
//   -(sum a_i)^e (A^T P + P A + gamma I (sum a_i)^(dp+da))   (negative family)
struct PolyaStabilitySdp {
    BlockSdp sdp;
    std::vector<Exponent> p_exponents;
    int n_positive_blocks = 0;
    int n_negative_blocks = 0;
};

inline PolyaStabilitySdp build_polya_stability_sdp_simplex(const MatrixPolynomial& a_in, int d_p,
                                                           int e, double gamma) {
    const int l = a_in.n_vars();
    const int n = static_cast<int>(a_in.zero_prototype().rows());
    MatrixPolynomial a = a_in.is_homogeneous() ? a_in : homogenize(a_in, a_in.degree());
    const int d_a = a.degree();

    PolyaStabilitySdp out;
    out.p_exponents = exponents_exact_degree(l, d_p);
    std::vector<int> ids;
    for (std::size_t k = 0; k < out.p_exponents.size(); ++k)
        ids.push_back(out.sdp.vars.add_symmetric("P" + std::to_string(k), n));
    ParametricMatrixPoly p =
        ParametricMatrixPoly::from_unknowns(l, n, out.p_exponents, ids);

    const Polynomial s = simplex_form(l);
    const Polynomial mult = poly_power(s, e);
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);

    ParametricMatrixPoly positive = p;
    if (gamma != 0.0) {
        MatrixPolynomial gterm(l, Eigen::MatrixXd::Zero(n, n));
        for (const auto& [ex, c] : poly_power(s, d_p).terms()) gterm.add_term(ex, -gamma * c * eye);
        positive.add(ParametricMatrixPoly::from_constant(gterm));
    }
    positive = positive.scalar_poly_multiply(mult);
    auto pos_blocks = parametric_to_blocks(positive, out.sdp.vars, +1.0);
    out.n_positive_blocks = static_cast<int>(pos_blocks.size());

    ParametricMatrixPoly lyap = p.left_multiply(transpose(a));
    lyap.add(p.right_multiply(a));
    if (gamma != 0.0) {
        MatrixPolynomial gterm(l, Eigen::MatrixXd::Zero(n, n));
        for (const auto& [ex, c] : poly_power(s, d_p + d_a).terms())
            gterm.add_term(ex, gamma * c * eye);
        lyap.add(ParametricMatrixPoly::from_constant(gterm));
    }
    lyap = lyap.scalar_poly_multiply(mult);
    auto neg_blocks = parametric_to_blocks(lyap, out.sdp.vars, -1.0);
    out.n_negative_blocks = static_cast<int>(neg_blocks.size());

    for (auto& b : pos_blocks) out.sdp.blocks.push_back(std::move(b));
    for (auto& b : neg_blocks) out.sdp.blocks.push_back(std::move(b));
    return out;
}

inline std::optional<StabilityCertificate> polya_stability_simplex(const MatrixPolynomial& a,
                                                                   int d_p, int e, double gamma,
                                                                   const SdpOptions& opts = {}) {
    PolyaStabilitySdp built = build_polya_stability_sdp_simplex(a, d_p, e, gamma);
    const auto sol = sdp_feasibility(built.sdp, opts);
    if (!sol.feasible()) return std::nullopt;
    StabilityCertificate cert;
    cert.kind = LyapKind::PolyaSimplex;
    cert.d = d_p;
    cert.e = e;
    cert.margin = sol.margin;
    cert.n_params = a.n_vars();
    cert.exponents = built.p_exponents;
    for (std::size_t k = 0; k < built.p_exponents.size(); ++k)
        cert.matrices.push_back(sol.values.at("P" + std::to_string(k)));
    return cert;
}

// Polya-expanded stability SDP over a hypercube: multi-homogenize A to
// B(beta,eta), parameterize Q(beta,eta) of degree vector d_q, and expand
//   prod (b_i+h_i)^e (Q - gamma I prod (b_i+h_i)^{d_qi})
//   -prod (b_i+h_i)^e (B^T Q + Q B + gamma I prod (b_i+h_i)^{d_qi+d_bi}).
struct PolyaHypercubeSdp {
    BlockSdp sdp;
    std::vector<Exponent> q_exponents;  // over 2l variables
    std::vector<int> d_b;
    int n_positive_blocks = 0;
    int n_negative_blocks = 0;
};

inline PolyaHypercubeSdp build_polya_stability_sdp_hypercube(const MatrixPolynomial& a_in,
                                                             const Hypercube& box,
                                                             const std::vector<int>& d_q, int e,
                                                             double gamma) {
    const int l = a_in.n_vars();
    if (box.n() != l)
        throw std::invalid_argument("polya hypercube sdp: box dimension mismatch");
    const int n = static_cast<int>(a_in.zero_prototype().rows());
    const MultiHomogMatrixPolynomial b = multi_homogenize(a_in, box);

    PolyaHypercubeSdp out;
    out.d_b = b.degree_vec;
    BlockSdp& sdp = out.sdp;

    // Q(beta, eta) = sum over h <= d_q of Q_h beta^h eta^(d_q - h)
    std::vector<int> ids;
    for (const auto& h : exponents_in_box(d_q)) {
        Exponent full(static_cast<std::size_t>(2 * l), 0);
        for (int i = 0; i < l; ++i) {
            full[static_cast<std::size_t>(i)] = h[static_cast<std::size_t>(i)];
            full[static_cast<std::size_t>(i + l)] =
                d_q[static_cast<std::size_t>(i)] - h[static_cast<std::size_t>(i)];
        }
        out.q_exponents.push_back(full);
        ids.push_back(sdp.vars.add_symmetric("Q" + std::to_string(ids.size()), n));
    }
    ParametricMatrixPoly q =
        ParametricMatrixPoly::from_unknowns(2 * l, n, out.q_exponents, ids);

    const Polynomial mult = pair_multiplier(l, e);
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);

    ParametricMatrixPoly positive = q;
    if (gamma != 0.0) {
        MatrixPolynomial gterm(2 * l, Eigen::MatrixXd::Zero(n, n));
        for (const auto& [ex, c] : pair_multiplier(l, d_q).terms())
            gterm.add_term(ex, -gamma * c * eye);
        positive.add(ParametricMatrixPoly::from_constant(gterm));
    }
    positive = positive.scalar_poly_multiply(mult);
    auto pos_blocks = parametric_to_blocks(positive, sdp.vars, +1.0);
    out.n_positive_blocks = static_cast<int>(pos_blocks.size());

    ParametricMatrixPoly lyap = q.left_multiply(transpose(b.poly));
    lyap.add(q.right_multiply(b.poly));
    if (gamma != 0.0) {
        std::vector<int> dqb(static_cast<std::size_t>(l));
        for (int i = 0; i < l; ++i)
            dqb[static_cast<std::size_t>(i)] = d_q[static_cast<std::size_t>(i)] +
                                               b.degree_vec[static_cast<std::size_t>(i)];
        MatrixPolynomial gterm(2 * l, Eigen::MatrixXd::Zero(n, n));
        for (const auto& [ex, c] : pair_multiplier(l, dqb).terms())
            gterm.add_term(ex, gamma * c * eye);
        lyap.add(ParametricMatrixPoly::from_constant(gterm));
    }
    lyap = lyap.scalar_poly_multiply(mult);
    auto neg_blocks = parametric_to_blocks(lyap, sdp.vars, -1.0);
    out.n_negative_blocks = static_cast<int>(neg_blocks.size());

    for (auto& blk : pos_blocks) sdp.blocks.push_back(std::move(blk));
    for (auto& blk : neg_blocks) sdp.blocks.push_back(std::move(blk));
    return out;
}

inline std::optional<StabilityCertificate> polya_stability_hypercube(
    const MatrixPolynomial& a, const Hypercube& box, const std::vector<int>& d_q, int e,
    double gamma, const SdpOptions& opts = {}) {
    PolyaHypercubeSdp built = build_polya_stability_sdp_hypercube(a, box, d_q, e, gamma);
    const auto sol = sdp_feasibility(built.sdp, opts);
    if (!sol.feasible()) return std::nullopt;
    StabilityCertificate cert;
    cert.kind = LyapKind::PolyaHypercube;
    cert.e = e;
    cert.d_q = d_q;
    cert.margin = sol.margin;
    cert.n_params = a.n_vars();
    cert.box = box;
    cert.exponents = built.q_exponents;
    for (std::size_t k = 0; k < built.q_exponents.size(); ++k)
        cert.matrices.push_back(sol.values.at("Q" + std::to_string(k)));
    return cert;
}

struct MarginResult {
    double margin = 0.0;
    BisectionTrace trace;
    std::optional<StabilityCertificate> certificate;  // at the certified margin
};

// Generic margin driver: probe(v) returns a certificate when the family is
// certified at parameter value v; feasibility must be monotone decreasing.
inline MarginResult stability_margin_search(
    const std::function<std::optional<StabilityCertificate>(double)>& probe,
    const BisectionOptions& bopts) {
    MarginResult res;
    std::map<double, StabilityCertificate> certs;
    auto wrapped = [&](double v) -> std::pair<bool, int> {
        auto cert = probe(v);
        if (cert) {
            const int level = cert->kind == LyapKind::HomogeneousP ? cert->d : cert->e;
            certs[v] = std::move(*cert);
            return {true, level};
        }
        return {false, 0};
    };
    BisectionOutcome bo = bisect_max_feasible(bopts, wrapped);
    res.margin = bo.certified;
    res.trace = std::move(bo.trace);
    res.certificate = certs.at(bo.certified);
    return res;
}

// Example-1 style family: vertices A0 + eta * Ai tested with the
// homogeneous Lyapunov LMI at level d.
inline MarginResult margin_eta_vertices(const Eigen::MatrixXd& a0,
                                        const std::vector<Eigen::MatrixXd>& ai, int d,
                                        const BisectionOptions& bopts,
                                        const SdpOptions& opts = {}) {
    return stability_margin_search(
        [&](double eta) {
            std::vector<Eigen::MatrixXd> vertices;
            vertices.reserve(ai.size());
            for (const auto& m : ai) vertices.push_back(a0 + eta * m);
            return homogeneous_lyapunov_simplex(vertices, d, opts);
        },
        bopts);
}

// Example-2 style family: A(f_L(beta)) on the simplex via the map
// alpha_i = 2|L|(beta_i - 1/2); bisection minimizes L < 0 with an
// escalation schedule over (d_p, e).
inline MarginResult margin_simplex_map(const MatrixPolynomial& a,
                                       const std::vector<std::pair<int, int>>& dp_e_schedule,
                                       const BisectionOptions& bopts,
                                       const SdpOptions& opts = {}) {
    const int l = a.n_vars();
    auto probe = [&](double lval) -> std::optional<StabilityCertificate> {
        const double scale = 2.0 * std::abs(lval);
        Eigen::MatrixXd m = scale * Eigen::MatrixXd::Identity(l, l);
        Eigen::VectorXd b = Eigen::VectorXd::Constant(l, -std::abs(lval));
        MatrixPolynomial mapped = affine_substitute(a, m, b);
        for (const auto& [d_p, e] : dp_e_schedule) {
            auto cert = polya_stability_simplex(mapped, d_p, e, 0.0, opts);
            if (cert) return cert;
        }
        return std::nullopt;
    };
    // minimizing L: feasible near 0-, infeasible for very negative L
    MarginResult res;
    std::map<double, StabilityCertificate> certs;
    auto wrapped = [&](double v) -> std::pair<bool, int> {
        auto cert = probe(v);
        if (cert) {
            const int lev = cert->e;
            certs[v] = std::move(*cert);
            return {true, lev};
        }
        return {false, 0};
    };
    BisectionOutcome bo = bisect_min_feasible(bopts, wrapped);
    res.margin = bo.certified;
    res.trace = std::move(bo.trace);
    res.certificate = certs.at(bo.certified);
    return res;
}

// Example-3b style family: box of radius r scaled from unit radii.
inline MarginResult margin_hypercube_radius(const MatrixPolynomial& a,
                                            const Eigen::VectorXd& unit_radii,
                                            const std::vector<int>& d_q, int e,
                                            const BisectionOptions& bopts,
                                            const SdpOptions& opts = {}) {
    return stability_margin_search(
        [&](double r) -> std::optional<StabilityCertificate> {
            if (r <= 0.0) {
                // degenerate box: fall back to the nominal vertex LMI
                std::vector<Eigen::MatrixXd> vertex{a.evaluate(Eigen::VectorXd::Zero(a.n_vars()))};
                auto cert = common_lyapunov_vertices(vertex, opts);
                if (cert) cert->kind = LyapKind::PolyaHypercube;
                return cert;
            }
            return polya_stability_hypercube(a, Hypercube(r * unit_radii), d_q, e, 0.0, opts);
        },
        bopts);
}

// Grid validation of a certificate: min eigenvalue of P(alpha) and max
// eigenvalue of A^T P + P A over deterministic samples of the domain.
struct StabilityValidation {
    double min_p_eig = kInf;
    double max_lyap_eig = -kInf;

    bool passed() const { return min_p_eig > 0.0 && max_lyap_eig < 0.0; }
};

inline StabilityValidation validate_stability_certificate(
    const StabilityCertificate& cert, const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& a_of,
    int n_points, unsigned seed = 12345) {
    StabilityValidation v;
    std::mt19937 rng(seed);
    const int l = cert.n_params;
    for (int k = 0; k < n_points; ++k) {
        Eigen::VectorXd alpha(l);
        if (cert.kind == LyapKind::PolyaHypercube) {
            std::uniform_real_distribution<double> uni(-1.0, 1.0);
            for (int i = 0; i < l; ++i)
                alpha(i) = cert.box.centers(i) + cert.box.radii(i) * uni(rng);
        } else {
            std::exponential_distribution<double> exp1(1.0);
            double sum = 0.0;
            for (int i = 0; i < l; ++i) {
                alpha(i) = exp1(rng);
                sum += alpha(i);
            }
            alpha /= sum;
        }
        const Eigen::MatrixXd p = cert.eval_p(alpha);
        const Eigen::MatrixXd a = a_of(alpha);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ep(p, Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> el(a.transpose() * p + p * a,
                                                          Eigen::EigenvaluesOnly);
        v.min_p_eig = std::min(v.min_p_eig, ep.eigenvalues().minCoeff());
        v.max_lyap_eig = std::max(v.max_lyap_eig, el.eigenvalues().maxCoeff());
    }
    return v;
}

}  // namespace polycert
