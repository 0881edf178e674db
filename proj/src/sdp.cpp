// SPDX-License-Identifier: Apache-2.0
//
// isac-twin: digital-twin assisted ISAC beamforming simulator
// Copyright (C) 2026 The isac-twin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "isac/sdp.hpp"

#include "isac/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace isac
{

const char *to_string(SdpStatus s)
{
    switch (s)
    {
    case SdpStatus::Optimal:
        return "optimal";
    case SdpStatus::Infeasible:
        return "infeasible";
    case SdpStatus::MaxIter:
        return "max_iter";
    }
    return "unknown";
}

namespace
{

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Blocks = std::vector<MatrixXd>;

double inner(const MatrixXd &a, const MatrixXd &b) { return a.cwiseProduct(b).sum(); }

double inner(const Blocks &a, const Blocks &b)
{
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        s += inner(a[k], b[k]);
    return s;
}

double norm(const Blocks &a)
{
    double s = 0.0;
    for (const auto &m : a)
        s += m.squaredNorm();
    return std::sqrt(s);
}

// Largest alpha in (0, inf] with X + alpha dX PSD, for X positive definite.
double max_step(const MatrixXd &X, const MatrixXd &dX)
{
    if (X.rows() == 1)
        return dX(0, 0) >= 0.0 ? std::numeric_limits<double>::infinity() : -X(0, 0) / dX(0, 0);
    Eigen::LLT<MatrixXd> llt(X);
    if (llt.info() != Eigen::Success)
        return 0.0;
    const MatrixXd Linv_dX = llt.matrixL().solve(dX);
    const MatrixXd S = llt.matrixL().solve(Linv_dX.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (S + S.transpose()), Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues()(0);
    return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

double max_step(const Blocks &X, const Blocks &dX)
{
    double a = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < X.size(); ++k)
        a = std::min(a, max_step(X[k], dX[k]));
    return a;
}

struct Direction
{
    Blocks dX, dZ;
    VectorXd dy;
};

class HkmSolver
{
public:
    HkmSolver(const BlockSdpProblem &p) : p_(p), m_(p.b.size()), nb_(p.C.size()) {}

    BlockSdpResult run(const SdpOptions &opts)
    {
        init();
        BlockSdpResult r;
        const double bnorm = p_.b.norm();
        const double cnorm = norm(p_.C);
        for (int it = 0; it <= opts.max_iterations; ++it)
        {
            residuals();
            const double pobj = inner(p_.C, X_);
            const double dobj = p_.b.dot(y_);
            r.primal_residual = Rp_.norm() / (1.0 + bnorm);
            r.dual_residual = norm(Rd_) / (1.0 + cnorm);
            r.gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
            r.primal_objective = pobj;
            r.dual_objective = dobj;
            r.iterations = it;
            if (r.primal_residual < opts.tolerance && r.dual_residual < opts.tolerance && r.gap < opts.tolerance)
            {
                r.status = SdpStatus::Optimal;
                break;
            }
            if (it == opts.max_iterations || !step())
                break;
        }
        r.X = X_;
        r.Z = Z_;
        r.y = y_;
        return r;
    }

private:
    void init()
    {
        std::size_t n_total = 0;
        for (const auto &c : p_.C)
            n_total += static_cast<std::size_t>(c.rows());
        n_ = static_cast<double>(n_total);

        // starting point scale after the usual SDPT3 heuristic
        double xi = std::max(10.0, std::sqrt(n_));
        double eta = std::max(10.0, std::sqrt(n_));
        for (Eigen::Index i = 0; i < m_; ++i)
        {
            double an = 0.0;
            for (std::size_t k = 0; k < nb_; ++k)
                an += p_.A[i][k].squaredNorm();
            an = std::sqrt(an);
            xi = std::max(xi, n_ * (1.0 + std::abs(p_.b(i))) / (1.0 + an));
            eta = std::max(eta, an);
        }
        eta = std::max(eta, norm(p_.C));
        X_.clear();
        Z_.clear();
        for (const auto &c : p_.C)
        {
            X_.push_back(xi * MatrixXd::Identity(c.rows(), c.cols()));
            Z_.push_back(eta * MatrixXd::Identity(c.rows(), c.cols()));
        }
        y_ = VectorXd::Zero(m_);
    }

    void residuals()
    {
        Rp_ = p_.b;
        for (Eigen::Index i = 0; i < m_; ++i)
            for (std::size_t k = 0; k < nb_; ++k)
                Rp_(i) -= inner(p_.A[i][k], X_[k]);
        Rd_.resize(nb_);
        for (std::size_t k = 0; k < nb_; ++k)
        {
            Rd_[k] = p_.C[k] - Z_[k];
            for (Eigen::Index i = 0; i < m_; ++i)
                Rd_[k] -= y_(i) * p_.A[i][k];
        }
    }

    Direction solve_direction(const Blocks &Rc) const
    {
        VectorXd rhs = Rp_;
        for (std::size_t k = 0; k < nb_; ++k)
        {
            const MatrixXd T = (Rc[k] - X_[k] * Rd_[k]) * Zinv_[k];
            for (Eigen::Index i = 0; i < m_; ++i)
                rhs(i) -= inner(p_.A[i][k], T);
        }
        Direction d;
        d.dy = schur_.solve(rhs);
        d.dZ.resize(nb_);
        d.dX.resize(nb_);
        for (std::size_t k = 0; k < nb_; ++k)
        {
            d.dZ[k] = Rd_[k];
            for (Eigen::Index i = 0; i < m_; ++i)
                d.dZ[k] -= d.dy(i) * p_.A[i][k];
            const MatrixXd dX = (Rc[k] - X_[k] * d.dZ[k]) * Zinv_[k];
            d.dX[k] = 0.5 * (dX + dX.transpose());
        }
        return d;
    }

    bool step()
    {
        Zinv_.resize(nb_);
        for (std::size_t k = 0; k < nb_; ++k)
        {
            Eigen::LLT<MatrixXd> llt(Z_[k]);
            if (llt.info() != Eigen::Success)
                return false;
            Zinv_[k] = llt.solve(MatrixXd::Identity(Z_[k].rows(), Z_[k].cols()));
        }

        // Schur complement M_ij = sum_k <A_ik, X_k A_jk Z_k^{-1}>
        MatrixXd M = MatrixXd::Zero(m_, m_);
        for (std::size_t k = 0; k < nb_; ++k)
        {
            for (Eigen::Index j = 0; j < m_; ++j)
            {
                const MatrixXd G = X_[k] * p_.A[j][k] * Zinv_[k];
                for (Eigen::Index i = 0; i < m_; ++i)
                    M(i, j) += inner(p_.A[i][k], G);
            }
        }
        schur_ = Eigen::PartialPivLU<MatrixXd>(0.5 * (M + M.transpose()));

        const double mu = inner(X_, Z_) / n_;

        // predictor
        Blocks Rc(nb_);
        for (std::size_t k = 0; k < nb_; ++k)
            Rc[k] = -X_[k] * Z_[k];
        const Direction aff = solve_direction(Rc);
        const double ap_aff = std::min(1.0, max_step(X_, aff.dX));
        const double ad_aff = std::min(1.0, max_step(Z_, aff.dZ));
        double mu_aff = 0.0;
        for (std::size_t k = 0; k < nb_; ++k)
            mu_aff += inner(X_[k] + ap_aff * aff.dX[k], Z_[k] + ad_aff * aff.dZ[k]);
        mu_aff /= n_;
        const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

        // corrector
        for (std::size_t k = 0; k < nb_; ++k)
        {
            Rc[k] = sigma * mu * MatrixXd::Identity(X_[k].rows(), X_[k].cols()) - X_[k] * Z_[k] -
                    aff.dX[k] * aff.dZ[k];
        }
        const Direction d = solve_direction(Rc);
        if (!d.dy.allFinite())
            return false;

        constexpr double tau = 0.98;
        const double ap = std::min(1.0, tau * max_step(X_, d.dX));
        const double ad = std::min(1.0, tau * max_step(Z_, d.dZ));
        if (!(ap > 1e-14) || !(ad > 1e-14))
            return false;
        for (std::size_t k = 0; k < nb_; ++k)
        {
            X_[k] += ap * d.dX[k];
            Z_[k] += ad * d.dZ[k];
        }
        y_ += ad * d.dy;
        return true;
    }

    const BlockSdpProblem &p_;
    Eigen::Index m_;
    std::size_t nb_;
    double n_ = 1.0;
    Blocks X_, Z_, Rd_, Zinv_;
    VectorXd y_, Rp_;
    Eigen::PartialPivLU<MatrixXd> schur_;
};

void check_problem(const IsacSdpProblem &p)
{
    const auto n = p.Q_t.rows();
    if (n == 0 || p.Q_t.cols() != n || p.Q_u.rows() != n || p.Q_u.cols() != n)
        throw ContractError("solve_isac_sdp: Q_t and Q_u must be square of equal size");
    if (!is_hermitian(p.Q_t) || !is_hermitian(p.Q_u))
        throw ContractError("solve_isac_sdp: Q_t and Q_u must be Hermitian");
    if (!(p.gamma_u > 0.0) || !(p.sigma_u2 > 0.0) || !(p.power_budget > 0.0))
        throw ContractError("solve_isac_sdp: gamma, sigma^2 and power budget must be positive");
    if (!p.Q_t.allFinite() || !p.Q_u.allFinite())
        throw ContractError("solve_isac_sdp: non-finite problem data");
}

} // namespace

BlockSdpResult solve_block_sdp(const BlockSdpProblem &p, const SdpOptions &opts)
{
    if (p.C.empty() || static_cast<Eigen::Index>(p.A.size()) != p.b.size())
        throw ContractError("solve_block_sdp: inconsistent problem dimensions");
    for (const auto &row : p.A)
        if (row.size() != p.C.size())
            throw ContractError("solve_block_sdp: constraint block count mismatch");
    HkmSolver solver(p);
    return solver.run(opts);
}

Eigen::MatrixXd real_embed(const CMatrix &H)
{
    const auto n = H.rows();
    Eigen::MatrixXd X(2 * n, 2 * n);
    X.topLeftCorner(n, n) = H.real();
    X.topRightCorner(n, n) = -H.imag();
    X.bottomLeftCorner(n, n) = H.imag();
    X.bottomRightCorner(n, n) = H.real();
    return X;
}

CMatrix real_unembed(const Eigen::MatrixXd &X)
{
    const auto n = X.rows() / 2;
    const Eigen::MatrixXd re = 0.5 * (X.topLeftCorner(n, n) + X.bottomRightCorner(n, n));
    const Eigen::MatrixXd im = 0.5 * (X.bottomLeftCorner(n, n) - X.topRightCorner(n, n));
    CMatrix F(n, n);
    F.real() = re;
    F.imag() = im;
    return F;
}

double mrt_sinr_bound(const CMatrix &Q_u, double sigma_u2, double power_budget)
{
    return power_budget * herm_eig(Q_u).eigenvalues(0) / sigma_u2;
}

SdpSolution solve_isac_sdp(const IsacSdpProblem &p, const SdpOptions &opts)
{
    check_problem(p);
    const auto n = p.Q_t.rows();
    const double P = p.power_budget;

    const EigDecomposition eu = herm_eig(p.Q_u);
    const double lmax_u = eu.eigenvalues(0);
    const bool not_psd = eu.eigenvalues(n - 1) < -1e-9 * std::max(1.0, lmax_u);
    const bool not_rank1 = n > 1 && eu.eigenvalues(1) > 1e-8 * lmax_u;
    if (not_psd || not_rank1)
        throw ContractError("solve_isac_sdp: Q_u must be rank-1 PSD");

    SdpSolution sol;
    sol.certificate = P * lmax_u / p.gamma_u - p.sigma_u2;
    if (p.gamma_u * p.sigma_u2 > P * lmax_u * (1.0 + 1e-9))
    {
        sol.status = SdpStatus::Infeasible;
        sol.F_u = CMatrix::Zero(n, n);
        sol.F_t = CMatrix::Zero(n, n);
        return sol;
    }

    // Normalized data: F' = F / P, objective scaled by 1/||Q_t||, SINR row by 1/rho.
    const double qt_norm = p.Q_t.norm();
    const CMatrix Qt = qt_norm > 0.0 ? CMatrix(p.Q_t / qt_norm) : p.Q_t;
    const CMatrix Qu = p.Q_u * (P / p.sigma_u2);
    const double rho = std::max(1.0, Qu.norm() / p.gamma_u);

    const Eigen::MatrixXd Et = real_embed(Qt);
    const Eigen::MatrixXd Eu = real_embed(Qu);
    const auto n2 = 2 * n;
    const Eigen::MatrixXd I2 = Eigen::MatrixXd::Identity(n2, n2);
    const Eigen::MatrixXd one = Eigen::MatrixXd::Ones(1, 1);
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(1, 1);

    // blocks: X_u, X_t, power slack, SINR slack
    BlockSdpProblem sdp;
    sdp.C = {-0.5 * Et, -0.5 * Et, zero, zero};
    sdp.A = {
        {0.5 * I2, 0.5 * I2, one, zero},
        {Eu / (2.0 * p.gamma_u * rho), -Eu / (2.0 * rho), zero, -one},
    };
    sdp.b.resize(2);
    sdp.b << 1.0, 1.0 / rho;

    const BlockSdpResult r = solve_block_sdp(sdp, opts);
    sol.status = r.status;
    sol.iterations = r.iterations;
    sol.primal_residual = r.primal_residual;
    sol.dual_residual = r.dual_residual;
    sol.gap = r.gap;

    CMatrix Fu = P * real_unembed(r.X[0]);
    CMatrix Ft = P * real_unembed(r.X[1]);
    sol.F_u = 0.5 * (Fu + Fu.adjoint());
    sol.F_t = 0.5 * (Ft + Ft.adjoint());
    sol.objective = (p.Q_t * (sol.F_u + sol.F_t)).trace().real();
    return sol;
}

// ---------------------------------------------------------------------------
// brute-force oracle
// ---------------------------------------------------------------------------

namespace
{

struct OracleProblem
{
    const IsacSdpProblem &p;
    Eigen::Index n;
    double power_step;
};

// Best objective for fixed unit directions, over a geometric 0.1 dB grid of the communication power.
// The sensing power takes whatever the SINR and budget constraints leave.
double best_power_split(const OracleProblem &op, const CVector &uu, const CVector &ut, double *pu_best,
                        double *pt_best)
{
    const IsacSdpProblem &p = op.p;
    const double a = std::max(0.0, uu.dot(p.Q_u * uu).real());
    const double b = std::max(0.0, ut.dot(p.Q_u * ut).real());
    const double qu = uu.dot(p.Q_t * uu).real();
    const double qt = ut.dot(p.Q_t * ut).real();
    const double P = p.power_budget;
    // infeasible directions score below -1, higher the closer they get to meeting the SINR target
    const double pu_min = p.gamma_u * p.sigma_u2 / std::max(a, 1e-300);
    if (pu_min > P)
        return -1.0 - std::min(pu_min / P, 1e300);

    double best = -1.0;
    auto consider = [&](double pu) {
        pu = std::min(pu, P);
        double pt = P - pu;
        if (b > 0.0)
            pt = std::min(pt, (pu * a / p.gamma_u - p.sigma_u2) / b);
        pt = std::max(pt, 0.0);
        // the grid point must satisfy the SINR constraint as evaluated directly
        if (pu * a < p.gamma_u * (pt * b + p.sigma_u2) * (1.0 - 1e-12))
            return;
        const double v = pu * qu + pt * qt;
        if (v > best)
        {
            best = v;
            if (pu_best)
                *pu_best = pu;
            if (pt_best)
                *pt_best = pt;
        }
    };
    for (double pu = pu_min; pu < P; pu *= op.power_step)
        consider(pu);
    consider(P);
    return best;
}

CVector unit(const Eigen::VectorXd &x, Eigen::Index offset, Eigen::Index n)
{
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = cdouble(x(offset + 2 * i), x(offset + 2 * i + 1));
    const double nv = v.norm();
    if (nv == 0.0)
        v(0) = 1.0;
    else
        v /= nv;
    return v;
}

double evaluate(const OracleProblem &op, const Eigen::VectorXd &x)
{
    return best_power_split(op, unit(x, 0, op.n), unit(x, 2 * op.n, op.n), nullptr, nullptr);
}

} // namespace

OracleResult brute_force_oracle(const IsacSdpProblem &p, const OracleGrid &grid)
{
    check_problem(p);
    const auto n = p.Q_t.rows();
    if (n > 4)
        throw ContractError("brute_force_oracle: limited to N_t <= 4");
    const OracleProblem op{p, n, std::pow(10.0, grid.power_step_db / 10.0)};

    std::mt19937_64 rng(grid.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // starts: every pair of coordinate axes, then random points
    std::vector<Eigen::VectorXd> starts;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
        {
            Eigen::VectorXd x = Eigen::VectorXd::Zero(4 * n);
            x(2 * i) = 1.0;
            x(2 * n + 2 * j) = 1.0;
            starts.push_back(x);
        }
    // communication direction along the channel (MRT), sensing direction along each axis
    CVector h = p.Q_u.col(0);
    for (Eigen::Index k = 1; k < n; ++k)
        if (p.Q_u.col(k).norm() > h.norm())
            h = p.Q_u.col(k);
    for (Eigen::Index j = 0; j < n; ++j)
    {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(4 * n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            x(2 * i) = h(i).real();
            x(2 * i + 1) = h(i).imag();
        }
        x(2 * n + 2 * j) = 1.0;
        starts.push_back(x);
    }
    for (int s = 0; s < grid.random_starts; ++s)
    {
        Eigen::VectorXd x(4 * n);
        for (Eigen::Index i = 0; i < x.size(); ++i)
            x(i) = gauss(rng);
        starts.push_back(x);
    }

    OracleResult best;
    double best_val = -1.0;
    Eigen::VectorXd best_x;
    for (Eigen::VectorXd x : starts)
    {
        x /= x.norm();
        double fx = evaluate(op, x);
        for (double h = grid.initial_step; h >= grid.final_step; h *= 0.5)
        {
            bool improved = true;
            while (improved)
            {
                improved = false;
                for (Eigen::Index i = 0; i < x.size(); ++i)
                {
                    for (double sgn : {1.0, -1.0})
                    {
                        Eigen::VectorXd y = x;
                        y(i) += sgn * h;
                        const double fy = evaluate(op, y);
                        if (fy > fx + 1e-15 * std::abs(fx))
                        {
                            x = y;
                            fx = fy;
                            improved = true;
                        }
                    }
                }
            }
        }
        if (fx > best_val)
        {
            best_val = fx;
            best_x = x;
        }
    }

    if (best_val < 0.0)
        return best;
    const CVector uu = unit(best_x, 0, n);
    const CVector ut = unit(best_x, 2 * n, n);
    double pu = 0.0, pt = 0.0;
    best.objective = best_power_split(op, uu, ut, &pu, &pt);
    best.feasible = true;
    best.f_u = std::sqrt(pu) * uu;
    best.f_t = std::sqrt(pt) * ut;
    return best;
}

} // namespace isac
