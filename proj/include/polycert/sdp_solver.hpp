#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polycert/lp_solver.hpp"

namespace polycert {

// Matrix unknowns scalarized into a flat variable vector. Symmetric
// unknowns are parameterized by their upper triangle; general unknowns
// entry by entry.
class VariableSpace {
  public:
    struct Info {
        std::string name;
        int rows = 0, cols = 0;
        bool symmetric = false;
        int offset = 0, count = 0;
    };

    int add_symmetric(const std::string& name, int n) {
        Info info{name, n, n, true, scalar_count_, n * (n + 1) / 2};
        scalar_count_ += info.count;
        unknowns_.push_back(std::move(info));
        return static_cast<int>(unknowns_.size()) - 1;
    }
    int add_general(const std::string& name, int rows, int cols) {
        Info info{name, rows, cols, false, scalar_count_, rows * cols};
        scalar_count_ += info.count;
        unknowns_.push_back(std::move(info));
        return static_cast<int>(unknowns_.size()) - 1;
    }

    int n_unknowns() const { return static_cast<int>(unknowns_.size()); }
    int scalar_count() const { return scalar_count_; }
    const Info& info(int id) const { return unknowns_.at(static_cast<std::size_t>(id)); }

    // Entry (p, q) addressed by the local scalar index within unknown id.
    std::pair<int, int> entry(int id, int local) const {
        const Info& u = info(id);
        if (u.symmetric) {
            int p = 0, remaining = local;
            while (remaining >= u.rows - p) {
                remaining -= u.rows - p;
                ++p;
            }
            return {p, p + remaining};
        }
        return {local / u.cols, local % u.cols};
    }

    Eigen::MatrixXd unpack(int id, const Eigen::VectorXd& z) const {
        const Info& u = info(id);
        Eigen::MatrixXd x = Eigen::MatrixXd::Zero(u.rows, u.cols);
        for (int local = 0; local < u.count; ++local) {
            auto [p, q] = entry(id, local);
            const double v = z(u.offset + local);
            x(p, q) = v;
            if (u.symmetric) x(q, p) = v;
        }
        return x;
    }

  private:
    std::vector<Info> unknowns_;
    int scalar_count_ = 0;
};

// One PSD constraint block: constant + sum_k z_k * coeff_k >= margin * I.
struct SdpBlock {
    Eigen::MatrixXd constant;
    std::vector<std::pair<int, Eigen::MatrixXd>> terms;  // scalar var -> symmetric coefficient

    int dim() const { return static_cast<int>(constant.rows()); }
};

struct SdpEquality {
    std::vector<std::pair<int, double>> terms;
    double rhs = 0.0;
};

// Feasibility-with-margin problem: maximize t subject to every block
// minus t*I being PSD, plus optional scalar equalities on the unknowns.
struct BlockSdp {
    VariableSpace vars;
    std::vector<SdpBlock> blocks;
    std::vector<SdpEquality> equalities;
};

struct SdpOptions {
    int max_iters = 200;
    double tol_mu = 1e-9;
    double tol_step = 1e-12;
    double feas_threshold = 1e-7;  // normalized margin above which "feasible"
    double margin_cap = 1.0;       // saturation of the maximized margin
    double var_box = 1e4;          // bound on scalarized unknowns
};

enum class SdpStatus { FeasibleWithMargin, NotFeasible, NumericalFailure };

struct SdpSolution {
    SdpStatus status = SdpStatus::NumericalFailure;
    double margin = 0.0;           // normalized margin t* (blocks pre-scaled)
    double unscaled_margin = 0.0;  // min over blocks of lambda_min at the solution
    std::map<std::string, Eigen::MatrixXd> values;
    std::vector<double> block_min_eigs;
    int iterations = 0;

    bool feasible() const { return status == SdpStatus::FeasibleWithMargin; }
};

inline Eigen::MatrixXd eval_sdp_block(const SdpBlock& blk, const Eigen::VectorXd& z) {
    Eigen::MatrixXd m = blk.constant;
    for (const auto& [k, d] : blk.terms) m += z(k) * d;
    return m;
}

namespace detail {

struct IpmBlock {
    int dim = 0;
    double scale = 1.0;
    Eigen::MatrixXd constant;                            // scaled
    std::vector<int> vars;                               // reduced variable ids (margin last)
    std::vector<Eigen::MatrixXd> coeffs;                 // scaled, aligned with vars
    // iterate state
    Eigen::MatrixXd s, y;
    // per-iteration scaling data
    Eigen::MatrixXd ginv;                                // G_f^{-1}
    Eigen::VectorXd lambda;                              // diagonal of the scaled point V
    std::vector<Eigen::MatrixXd> ahat;                   // Ginv * coeff * Ginv^T
    Eigen::MatrixXd rhat_d;                              // scaled dual residual
    Eigen::MatrixXd ds_aff_hat, dy_aff_hat, ds, dy;
};

// Scalar (orthant) row: s = a0 + g * v_k >= 0.
struct IpmRow {
    int var = 0;
    double a0 = 0.0, g = 0.0;
    double s = 0.0, y = 0.0;
    double ds_aff = 0.0, dy_aff = 0.0, ds = 0.0, dy = 0.0;
};

constexpr double kInfStep() { return 1e30; }

inline double max_step_psd(const Eigen::MatrixXd& s, const Eigen::MatrixXd& ds) {
    if (s.rows() == 1) {
        const double d = ds(0, 0);
        return d >= 0.0 ? kInfStep() : -s(0, 0) / d;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(s);
    if (llt.info() != Eigen::Success) return 0.0;
    const Eigen::MatrixXd l = llt.matrixL();
    Eigen::MatrixXd m = l.triangularView<Eigen::Lower>().solve(ds);
    m = l.triangularView<Eigen::Lower>().solve(m.transpose().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()),
                                                      Eigen::EigenvaluesOnly);
    const double lam = es.eigenvalues().minCoeff();
    return lam >= 0.0 ? kInfStep() : -1.0 / lam;
}

}  // namespace detail

// Primal-dual interior-point solver (Nesterov-Todd scaling, Mehrotra-style
// predictor-corrector) for the block-diagonal margin problem
//   max t  s.t.  C_j + sum_k z_k D_{j,k} - t I >= 0  for every block j,
// with equalities eliminated through a null-space basis, unknowns confined
// to a large box and the margin saturated at margin_cap so the problem is
// always strictly feasible and bounded. Blocks are pre-scaled by their
// largest absolute entry; `margin` refers to the scaled blocks and
// `unscaled_margin` to the original ones.
inline SdpSolution sdp_feasibility(const BlockSdp& sdp, const SdpOptions& opts = {}) {
    using Eigen::MatrixXd;
    using Eigen::VectorXd;

    SdpSolution sol;
    const int n0 = sdp.vars.scalar_count();

    // Equality elimination: z = z0 + N w.
    MatrixXd kernel;
    VectorXd z_part = VectorXd::Zero(n0);
    bool identity_kernel = sdp.equalities.empty();
    if (!identity_kernel) {
        const int ne = static_cast<int>(sdp.equalities.size());
        MatrixXd e = MatrixXd::Zero(ne, n0);
        VectorXd f(ne);
        for (int i = 0; i < ne; ++i) {
            f(i) = sdp.equalities[static_cast<std::size_t>(i)].rhs;
            for (const auto& [k, c] : sdp.equalities[static_cast<std::size_t>(i)].terms)
                e(i, k) += c;
        }
        z_part = e.completeOrthogonalDecomposition().solve(f);
        if ((e * z_part - f).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + f.cwiseAbs().maxCoeff())) {
            sol.status = SdpStatus::NotFeasible;
            sol.margin = -kInf;
            return sol;
        }
        Eigen::FullPivLU<MatrixXd> lu(e);
        kernel = lu.kernel();
        if (kernel.cols() == 1 && kernel.isZero(0.0)) kernel.resize(n0, 0);
    }
    const int nw = identity_kernel ? n0 : static_cast<int>(kernel.cols());
    const int nv = nw + 1;  // reduced unknowns + margin
    const int t_idx = nw;

    // Build scaled IPM blocks in the reduced variables.
    std::vector<detail::IpmBlock> blocks;
    blocks.reserve(sdp.blocks.size());
    for (const auto& blk : sdp.blocks) {
        detail::IpmBlock ib;
        ib.dim = blk.dim();
        MatrixXd cst = blk.constant;
        std::vector<std::pair<int, MatrixXd>> terms;
        if (identity_kernel) {
            terms.assign(blk.terms.begin(), blk.terms.end());
        } else {
            for (const auto& [k, d] : blk.terms) cst += z_part(k) * d;
            for (int c = 0; c < nw; ++c) {
                MatrixXd acc = MatrixXd::Zero(ib.dim, ib.dim);
                bool nonzero = false;
                for (const auto& [k, d] : blk.terms) {
                    const double w = kernel(k, c);
                    if (w == 0.0) continue;
                    acc += w * d;
                    nonzero = true;
                }
                if (nonzero && acc.cwiseAbs().maxCoeff() > 1e-14) terms.emplace_back(c, acc);
            }
        }
        double scale = cst.cwiseAbs().maxCoeff();
        for (const auto& [k, d] : terms) scale = std::max(scale, d.cwiseAbs().maxCoeff());
        ib.scale = scale > 1e-12 ? scale : 1.0;
        ib.constant = cst / ib.scale;
        for (auto& [k, d] : terms) {
            ib.vars.push_back(k);
            ib.coeffs.push_back(0.5 * (d + d.transpose()) / ib.scale);
        }
        ib.vars.push_back(t_idx);
        ib.coeffs.push_back(-MatrixXd::Identity(ib.dim, ib.dim));
        blocks.push_back(std::move(ib));
    }

    // Orthant rows: variable box and margin cap.
    std::vector<detail::IpmRow> rows;
    for (int k = 0; k < nw; ++k) {
        rows.push_back({k, opts.var_box, 1.0, 0, 0, 0, 0, 0, 0});
        rows.push_back({k, opts.var_box, -1.0, 0, 0, 0, 0, 0, 0});
    }
    rows.push_back({t_idx, opts.margin_cap, -1.0, 0, 0, 0, 0, 0, 0});

    int n_tot = static_cast<int>(rows.size());
    for (const auto& b : blocks) n_tot += b.dim;

    // Strictly feasible start on the LMI side: t0 well below every block.
    double t0 = opts.margin_cap - 1.0;
    for (const auto& b : blocks) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(b.constant, Eigen::EigenvaluesOnly);
        t0 = std::min(t0, es.eigenvalues().minCoeff() - 1.0);
    }
    VectorXd v = VectorXd::Zero(nv);
    v(t_idx) = t0;
    const double y0 = 1.0 / static_cast<double>(n_tot);
    for (auto& b : blocks) {
        b.s = b.constant - t0 * MatrixXd::Identity(b.dim, b.dim);
        b.y = y0 * MatrixXd::Identity(b.dim, b.dim);
    }
    for (auto& r : rows) {
        r.s = r.a0 + r.g * v(r.var);
        r.y = y0;
    }

    VectorXd bvec = VectorXd::Zero(nv);
    bvec(t_idx) = 1.0;

    MatrixXd schur(nv, nv);
    VectorXd rhs(nv), r_p(nv), dv_aff(nv), dv(nv);
    bool converged = false;
    int iter = 0;
    bool numerical_ok = true;

    for (; iter < opts.max_iters; ++iter) {
        // Residuals and NT scaling per block.
        double mu_num = 0.0;
        r_p = -bvec;
        bool scale_ok = true;
        for (auto& b : blocks) {
            MatrixXd expr = b.constant;
            for (std::size_t i = 0; i < b.vars.size(); ++i)
                expr += v(b.vars[i]) * b.coeffs[i];
            MatrixXd rd = expr - b.s;  // dual residual (stays near zero)

            Eigen::LLT<MatrixXd> llt(b.s);
            if (llt.info() != Eigen::Success) {
                scale_ok = false;
                break;
            }
            const MatrixXd l = llt.matrixL();
            const MatrixXd k = l.transpose() * b.y * l;
            Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (k + k.transpose()));
            const VectorXd d = es.eigenvalues();
            if (d.minCoeff() <= 0.0) {
                scale_ok = false;
                break;
            }
            b.lambda = d.cwiseSqrt();
            const MatrixXd linv =
                l.triangularView<Eigen::Lower>().solve(MatrixXd::Identity(b.dim, b.dim));
            b.ginv = d.array().pow(0.25).matrix().asDiagonal() * es.eigenvectors().transpose() *
                     linv;
            b.ahat.resize(b.vars.size());
            for (std::size_t i = 0; i < b.vars.size(); ++i) {
                b.ahat[i] = b.ginv * b.coeffs[i] * b.ginv.transpose();
                r_p(b.vars[i]) -= (b.coeffs[i].array() * b.y.array()).sum();
            }
            b.rhat_d = b.ginv * rd * b.ginv.transpose();
            mu_num += b.lambda.squaredNorm();
        }
        if (!scale_ok) {
            numerical_ok = false;
            break;
        }
        for (const auto& r : rows) {
            r_p(r.var) -= r.g * r.y;
            mu_num += r.s * r.y;
        }
        // KKT of max b^T v: <A_k, Y> = -b_k, so the residual is -b - A^*(Y).
        const double mu = mu_num / n_tot;
        const double rp_norm = r_p.cwiseAbs().maxCoeff();
        if (mu <= opts.tol_mu * (1.0 + std::abs(v(t_idx))) && rp_norm <= 1e-8 * 2.0) {
            converged = true;
            break;
        }
        if (!std::isfinite(mu)) {
            numerical_ok = false;
            break;
        }

        // Schur complement M_uv = sum <Ahat_u, Ahat_v>.
        schur.setZero();
        for (const auto& b : blocks) {
            const int na = static_cast<int>(b.vars.size());
            for (int i = 0; i < na; ++i)
                for (int j = i; j < na; ++j) {
                    const double val = (b.ahat[static_cast<std::size_t>(i)].array() *
                                        b.ahat[static_cast<std::size_t>(j)].array())
                                           .sum();
                    schur(b.vars[static_cast<std::size_t>(i)],
                          b.vars[static_cast<std::size_t>(j)]) += val;
                    if (i != j)
                        schur(b.vars[static_cast<std::size_t>(j)],
                              b.vars[static_cast<std::size_t>(i)]) += val;
                }
        }
        for (const auto& r : rows) schur(r.var, r.var) += r.g * r.g * (r.y / r.s);

        Eigen::LDLT<MatrixXd> fact(schur);
        if (fact.info() != Eigen::Success) {
            schur.diagonal().array() += 1e-12 * (1.0 + schur.diagonal().cwiseAbs().maxCoeff());
            fact.compute(schur);
            if (fact.info() != Eigen::Success) {
                numerical_ok = false;
                break;
            }
        }

        // Predictor: combined scaled equation dS_hat + dY_hat = -V.
        rhs.setZero();
        for (const auto& b : blocks)
            for (std::size_t i = 0; i < b.vars.size(); ++i) {
                double acc = 0.0;
                for (int p = 0; p < b.dim; ++p) acc -= b.lambda(p) * b.ahat[i](p, p);
                acc -= (b.ahat[i].array() * b.rhat_d.array()).sum();
                rhs(b.vars[i]) += acc;
            }
        for (const auto& r : rows) {
            const double lam = std::sqrt(r.s * r.y);
            const double ghat = r.g * std::sqrt(r.y / r.s);
            const double rd = r.a0 + r.g * v(r.var) - r.s;
            rhs(r.var) += ghat * (-lam) - r.g * (r.y / r.s) * rd;
        }
        rhs -= r_p;
        dv_aff = fact.solve(rhs);

        double alpha_p_aff = 1.0, alpha_d_aff = 1.0;
        for (auto& b : blocks) {
            MatrixXd ds = MatrixXd::Zero(b.dim, b.dim);
            for (std::size_t i = 0; i < b.vars.size(); ++i) ds += dv_aff(b.vars[i]) * b.coeffs[i];
            // rd folds the (small) dual residual back in
            MatrixXd expr = b.constant;
            for (std::size_t i = 0; i < b.vars.size(); ++i)
                expr += v(b.vars[i]) * b.coeffs[i];
            ds += expr - b.s;
            b.ds_aff_hat = b.ginv * ds * b.ginv.transpose();
            b.dy_aff_hat = -MatrixXd(b.lambda.asDiagonal()) - b.ds_aff_hat;
            const MatrixXd dy = b.ginv.transpose() * b.dy_aff_hat * b.ginv;
            alpha_p_aff = std::min(alpha_p_aff, detail::max_step_psd(b.s, ds));
            alpha_d_aff = std::min(alpha_d_aff, detail::max_step_psd(b.y, dy));
            b.ds = ds;  // reuse storage below
            b.dy = dy;
        }
        for (auto& r : rows) {
            const double lam = std::sqrt(r.s * r.y);
            r.ds_aff = r.g * dv_aff(r.var) + (r.a0 + r.g * v(r.var) - r.s);
            const double dshat = r.ds_aff * std::sqrt(r.y / r.s);
            const double dyhat = -lam - dshat;
            r.dy_aff = dyhat * std::sqrt(r.y / r.s);
            if (r.ds_aff < 0.0) alpha_p_aff = std::min(alpha_p_aff, -r.s / r.ds_aff);
            if (r.dy_aff < 0.0) alpha_d_aff = std::min(alpha_d_aff, -r.y / r.dy_aff);
        }

        double mu_aff = 0.0;
        for (const auto& b : blocks) {
            const MatrixXd s_new = b.s + alpha_p_aff * b.ds;
            const MatrixXd y_new = b.y + alpha_d_aff * b.dy;
            mu_aff += (s_new.array() * y_new.array()).sum();
        }
        for (const auto& r : rows)
            mu_aff += (r.s + alpha_p_aff * r.ds_aff) * (r.y + alpha_d_aff * r.dy_aff);
        mu_aff = std::max(mu_aff / n_tot, 0.0);
        double sigma = std::pow(mu_aff / mu, 3.0);
        sigma = std::min(std::max(sigma, 1e-8), 0.9999);

        // Corrector: dS_hat + dY_hat = sigma*mu*V^-1 - V - Lv^-1(2 sym(dS_aff dY_aff)).
        rhs.setZero();
        for (auto& b : blocks) {
            MatrixXd t = b.ds_aff_hat * b.dy_aff_hat;
            t = 0.5 * (t + t.transpose().eval());
            MatrixXd rh(b.dim, b.dim);
            for (int p = 0; p < b.dim; ++p)
                for (int q = 0; q < b.dim; ++q)
                    rh(p, q) = -2.0 * t(p, q) / (b.lambda(p) + b.lambda(q));
            for (int p = 0; p < b.dim; ++p)
                rh(p, p) += sigma * mu / b.lambda(p) - b.lambda(p);
            b.ds = rh;  // stash RHS_hat in ds
            for (std::size_t i = 0; i < b.vars.size(); ++i)
                rhs(b.vars[i]) +=
                    (b.ahat[i].array() * (rh - b.rhat_d).array()).sum();
        }
        for (auto& r : rows) {
            const double lam = std::sqrt(r.s * r.y);
            const double dshat = r.ds_aff * std::sqrt(r.y / r.s);
            const double dyhat = r.dy_aff * std::sqrt(r.s / r.y);
            const double rh = sigma * mu / lam - lam - dshat * dyhat / lam;
            r.ds = rh;  // stash
            const double ghat = r.g * std::sqrt(r.y / r.s);
            const double rd = r.a0 + r.g * v(r.var) - r.s;
            rhs(r.var) += ghat * rh - r.g * (r.y / r.s) * rd;
        }
        rhs -= r_p;
        dv = fact.solve(rhs);
        if (!dv.allFinite()) {
            numerical_ok = false;
            break;
        }

        double alpha_p = 1.0, alpha_d = 1.0;
        for (auto& b : blocks) {
            MatrixXd ds = MatrixXd::Zero(b.dim, b.dim);
            for (std::size_t i = 0; i < b.vars.size(); ++i) ds += dv(b.vars[i]) * b.coeffs[i];
            MatrixXd expr = b.constant;
            for (std::size_t i = 0; i < b.vars.size(); ++i)
                expr += v(b.vars[i]) * b.coeffs[i];
            ds += expr - b.s;
            const MatrixXd ds_hat = b.ginv * ds * b.ginv.transpose();
            const MatrixXd dy_hat = b.ds - ds_hat;  // RHS_hat - dS_hat
            const MatrixXd dy = b.ginv.transpose() * dy_hat * b.ginv;
            alpha_p = std::min(alpha_p, detail::max_step_psd(b.s, ds));
            alpha_d = std::min(alpha_d, detail::max_step_psd(b.y, dy));
            b.ds = ds;
            b.dy = dy;
        }
        for (auto& r : rows) {
            const double dsr = r.g * dv(r.var) + (r.a0 + r.g * v(r.var) - r.s);
            const double dshat = dsr * std::sqrt(r.y / r.s);
            const double dyhat = r.ds - dshat;
            const double dyr = dyhat * std::sqrt(r.y / r.s);
            if (dsr < 0.0) alpha_p = std::min(alpha_p, -r.s / dsr);
            if (dyr < 0.0) alpha_d = std::min(alpha_d, -r.y / dyr);
            r.ds = dsr;
            r.dy = dyr;
        }
        const double tau = mu < 1e-4 ? 0.99 : 0.98;
        alpha_p = std::min(1.0, tau * alpha_p);
        alpha_d = std::min(1.0, tau * alpha_d);
        if (std::min(alpha_p, alpha_d) < opts.tol_step) break;

        v += alpha_p * dv;
        for (auto& b : blocks) {
            b.s += alpha_p * b.ds;
            b.y += alpha_d * b.dy;
        }
        for (auto& r : rows) {
            r.s += alpha_p * r.ds;
            r.y += alpha_d * r.dy;
        }
    }

    sol.iterations = iter;
    const double t_final = v(t_idx);

    // Unpack unknown values.
    VectorXd z_full;
    if (identity_kernel) {
        z_full = v.head(nw);
    } else {
        z_full = z_part;
        if (nw > 0) z_full += kernel * v.head(nw);
    }
    for (int id = 0; id < sdp.vars.n_unknowns(); ++id)
        sol.values[sdp.vars.info(id).name] = sdp.vars.unpack(id, z_full);

    sol.block_min_eigs.reserve(sdp.blocks.size());
    double unscaled = kInf;
    for (const auto& blk : sdp.blocks) {
        const Eigen::MatrixXd m = eval_sdp_block(blk, z_full);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()),
                                                          Eigen::EigenvaluesOnly);
        const double lam = es.eigenvalues().minCoeff();
        sol.block_min_eigs.push_back(lam);
        unscaled = std::min(unscaled, lam);
    }
    sol.margin = t_final;
    sol.unscaled_margin = sdp.blocks.empty() ? 0.0 : unscaled;

    if (!numerical_ok) {
        sol.status = SdpStatus::NumericalFailure;
        return sol;
    }
    if (!converged) {
        // Loose stop: accept the verdict only when it is clear-cut.
        if (std::abs(t_final) > 10.0 * opts.feas_threshold) {
            sol.status = t_final > opts.feas_threshold ? SdpStatus::FeasibleWithMargin
                                                       : SdpStatus::NotFeasible;
        } else {
            sol.status = SdpStatus::NumericalFailure;
        }
        return sol;
    }
    sol.status = t_final > opts.feas_threshold ? SdpStatus::FeasibleWithMargin
                                               : SdpStatus::NotFeasible;
    return sol;
}

}  // namespace polycert
