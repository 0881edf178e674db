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

#include "isac/beamforming.hpp"

#include "isac/channel.hpp"
#include "isac/csv_io.hpp"
#include "isac/errors.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace isac
{

const char *to_string(Strategy s)
{
    switch (s)
    {
    case Strategy::FullChannel:
        return "full_channel";
    case Strategy::LosDirection:
        return "los_direction";
    case Strategy::DtFixedReflector:
        return "dt_fixed_reflector";
    case Strategy::DtDominantPath:
        return "dt_dominant_path";
    }
    return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name)
{
    for (Strategy s : kAllStrategies)
        if (name == to_string(s))
            return s;
    return std::nullopt;
}

Direction los_direction(const Vec3 &bs, const Vec3 &target)
{
    const Vec3 d = target - bs;
    if (d.norm() == 0.0)
        throw ContractError("los_direction: coincident BS and target positions");
    return direction_of(d);
}

CMatrix build_q_direction(const ArrayGeometry &tx, double az_rad, double el_rad)
{
    const CVector a = array_response(tx, az_rad, el_rad);
    return a.conjugate() * a.transpose();
}

CMatrix build_q_full(const CMatrix &H_t)
{
    CMatrix Q = H_t.adjoint() * H_t;
    return 0.5 * (Q + Q.adjoint());
}

DominantPath dominant_partial_direction(const std::vector<PartialPath> &paths)
{
    if (paths.empty())
        throw NoPathError("dominant_partial_direction: no partial path to the target");
    std::size_t best = 0;
    for (std::size_t i = 1; i < paths.size(); ++i)
    {
        const PartialPath &c = paths[i];
        const PartialPath &b = paths[best];
        const double gc = std::abs(c.beta1);
        const double gb = std::abs(b.beta1);
        const double tol = 1e-12 * std::max(gc, gb);
        if (gc > gb + tol)
            best = i;
        else if (std::abs(gc - gb) <= tol)
        {
            if (c.delay_s < b.delay_s || (c.delay_s == b.delay_s && c.aod_az_rad < b.aod_az_rad))
                best = i;
        }
    }
    return {paths[best].aod(), paths[best].beta1, best};
}

CMatrix strategy_q(Strategy strategy, const BeamInputs &in, std::optional<Direction> *steering, bool *used_fallback)
{
    auto require_geometry = [&](const char *what) {
        if (!in.bs_position || !in.target_position)
            throw ContractError(std::string(what) + " needs BS and target positions");
    };
    auto steer = [&](const Direction &d) {
        if (steering)
            *steering = d;
        return build_q_direction(in.tx, d.az_rad, d.el_rad);
    };
    if (used_fallback)
        *used_fallback = false;

    switch (strategy)
    {
    case Strategy::FullChannel:
        if (!in.H_t)
            throw ContractError("full_channel strategy needs the sensing channel H_t");
        if (in.H_t->cols() != static_cast<Eigen::Index>(in.tx.n_elements()))
            throw ContractError("full_channel: H_t column count differs from N_t");
        return build_q_full(*in.H_t);
    case Strategy::LosDirection:
        require_geometry("los_direction strategy");
        return steer(los_direction(*in.bs_position, *in.target_position));
    case Strategy::DtFixedReflector:
        require_geometry("dt_fixed_reflector strategy");
        if (!in.fixed_reflector)
            throw ContractError("dt_fixed_reflector strategy needs a configured reflector facet");
        return steer(los_direction(*in.bs_position, mirror_point(*in.target_position, *in.fixed_reflector)));
    case Strategy::DtDominantPath:
        if (!in.partial_paths)
            throw ContractError("dt_dominant_path strategy needs the traced partial paths");
        if (in.partial_paths->empty())
        {
            require_geometry("dt_dominant_path fallback");
            if (used_fallback)
                *used_fallback = true;
            return steer(los_direction(*in.bs_position, *in.target_position));
        }
        return steer(dominant_partial_direction(*in.partial_paths).aod);
    }
    throw ContractError("unknown strategy");
}

namespace
{

double rank1_ratio(const CMatrix &F, double lambda1)
{
    const double tr = F.trace().real();
    return tr > 0.0 ? std::clamp(lambda1 / tr, 0.0, 1.0) : 0.0;
}

double sinr_of(const CVector &f_u, const CVector &f_t, const CVector &h, double sigma2)
{
    return std::norm(h.dot(f_u)) / (std::norm(h.dot(f_t)) + sigma2);
}

struct Vertex
{
    double pu, pt;
};

// Lowers the rank of a PSD matrix F to one without changing tr(F), h^H F h or tr(Q_t F).
// Writes F = V V^H and moves along a Hermitian direction D in the null space of those three
// functionals until an eigenvalue of I - D / d_max reaches zero.
CMatrix reduce_to_rank1(const CMatrix &F, const CMatrix &Q_t, const CVector &h)
{
    const CMatrix Q_u = h * h.adjoint();
    CMatrix current = F;
    for (int guard = 0; guard < 64; ++guard)
    {
        const EigDecomposition e = herm_eig(current);
        const double top = e.eigenvalues(0);
        if (!(top > 0.0))
            return CMatrix::Zero(F.rows(), F.cols());
        Eigen::Index r = 0;
        while (r < e.eigenvalues.size() && e.eigenvalues(r) > 1e-12 * top)
            ++r;
        const CMatrix V = e.eigenvectors.leftCols(r) * e.eigenvalues.head(r).cwiseSqrt().asDiagonal();
        if (r <= 1)
            return V * V.adjoint();

        // real coordinates of a Hermitian r x r matrix: diagonal, then (Re, Im) of the upper triangle
        const CMatrix forms[3] = {V.adjoint() * V, V.adjoint() * Q_u * V, V.adjoint() * Q_t * V};
        const Eigen::Index dim = r * r;
        Eigen::MatrixXd L(3, dim);
        for (int k = 0; k < 3; ++k)
        {
            Eigen::Index c = 0;
            for (Eigen::Index i = 0; i < r; ++i)
                L(k, c++) = forms[k](i, i).real();
            for (Eigen::Index i = 0; i < r; ++i)
                for (Eigen::Index j = i + 1; j < r; ++j)
                {
                    L(k, c++) = 2.0 * forms[k](i, j).real();
                    L(k, c++) = 2.0 * forms[k](i, j).imag();
                }
            const double scale = L.row(k).norm();
            if (scale > 0.0)
                L.row(k) /= scale;
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(L, Eigen::ComputeFullV);
        const Eigen::VectorXd x = svd.matrixV().col(dim - 1);

        CMatrix D = CMatrix::Zero(r, r);
        Eigen::Index c = 0;
        for (Eigen::Index i = 0; i < r; ++i)
            D(i, i) = x(c++);
        for (Eigen::Index i = 0; i < r; ++i)
            for (Eigen::Index j = i + 1; j < r; ++j)
            {
                D(i, j) = cdouble(x(c), x(c + 1));
                D(j, i) = std::conj(D(i, j));
                c += 2;
            }
        const Eigen::VectorXd mu = herm_eig(D).eigenvalues;
        const double d_max = std::abs(mu(0)) >= std::abs(mu(r - 1)) ? mu(0) : mu(r - 1);
        if (d_max == 0.0)
            break;
        const CMatrix step = CMatrix::Identity(r, r) - D / d_max;
        current = V * step * V.adjoint();
        current = 0.5 * (current + current.adjoint());
    }
    return current;
}

} // namespace

Rank1Beams rank1_and_repair(const CMatrix &F_u, const CMatrix &F_t, const CMatrix &Q_t, const CVector &h_u,
                            double gamma_u, double sigma_u2, double power_budget)
{
    // Move everything F_u does not need for the user into F_t (f_u = F_u h / sqrt(h^H F_u h)
    // keeps h^H F_u h and leaves F_u - f_u f_u^H PSD), then reduce F_t to rank one.
    // Power, interference and sensing objective are unchanged by both steps.
    CMatrix Fu = 0.5 * (F_u + F_u.adjoint());
    CMatrix Ft = 0.5 * (F_t + F_t.adjoint());
    const double hFh = quad_form(Fu, h_u);
    if (hFh > 0.0)
    {
        const CVector g = Fu * h_u / std::sqrt(hFh);
        Ft += Fu - g * g.adjoint();
        Fu = g * g.adjoint();
        Ft = reduce_to_rank1(Ft, Q_t, h_u);
    }

    const TopEigenpair tu = rank1_top(Fu);
    const TopEigenpair tt = rank1_top(Ft);
    const double P = power_budget;

    Rank1Beams out;
    out.f_u = std::sqrt(tu.lambda1) * tu.v1;
    out.f_t = std::sqrt(tt.lambda1) * tt.v1;
    const double power = out.f_u.squaredNorm() + out.f_t.squaredNorm();
    if (power > P)
    {
        const double s = std::sqrt(P / power);
        out.f_u *= s;
        out.f_t *= s;
    }
    if (sinr_of(out.f_u, out.f_t, h_u, sigma_u2) >= gamma_u * (1.0 - 1e-9))
        return out;

    out.repaired = true;
    const double a = std::norm(h_u.dot(tu.v1));
    const double b = std::norm(h_u.dot(tt.v1));
    const double qu = quad_form(Q_t, tu.v1);
    const double qt = quad_form(Q_t, tt.v1);

    // vertices of {pu, pt >= 0, pu + pt <= P, pu a / gamma - pt b >= sigma^2}
    std::vector<Vertex> candidates = {{0.0, 0.0}, {0.0, P}, {P, 0.0}};
    if (a > 0.0)
    {
        candidates.push_back({gamma_u * sigma_u2 / a, 0.0});
        const double pu = (sigma_u2 + P * b) / (a / gamma_u + b);
        candidates.push_back({pu, P - pu});
    }
    bool found = false;
    Vertex best{0.0, 0.0};
    double best_val = -1.0;
    for (Vertex v : candidates)
    {
        v.pu = std::max(v.pu, 0.0);
        v.pt = std::max(v.pt, 0.0);
        if (v.pu + v.pt > P * (1.0 + 1e-12))
            continue;
        if (v.pu * a < gamma_u * (v.pt * b + sigma_u2) * (1.0 - 1e-12))
            continue;
        const double val = v.pu * qu + v.pt * qt;
        if (!found || val > best_val || (val == best_val && v.pu > best.pu))
        {
            best = v;
            best_val = val;
            found = true;
        }
    }
    if (found)
    {
        out.f_u = std::sqrt(best.pu) * tu.v1;
        out.f_t = std::sqrt(best.pt) * tt.v1;
        if (sinr_of(out.f_u, out.f_t, h_u, sigma_u2) >= gamma_u * (1.0 - 1e-9))
            return out;
    }

    // maximum-ratio transmission with the whole budget, no sensing beam
    const double hn = h_u.norm();
    if (hn == 0.0 || P * hn * hn / sigma_u2 < gamma_u * (1.0 - 1e-9))
        throw InfeasibleError("rank1_and_repair: SINR target unreachable even with MRT",
                              P * hn * hn / gamma_u - sigma_u2);
    out.f_u = std::sqrt(P) * h_u / hn;
    out.f_t = CVector::Zero(h_u.size());
    return out;
}

BeamSolution design_beams(Strategy strategy, const BeamInputs &in, const DesignParams &params)
{
    const auto nt = static_cast<Eigen::Index>(in.tx.n_elements());
    if (in.h_u.size() != nt || nt == 0)
        throw ContractError("design_beams: h_u length differs from the transmit array size");

    BeamSolution sol;
    IsacSdpProblem prob;
    prob.Q_t = strategy_q(strategy, in, &sol.steering, &sol.used_fallback);
    prob.Q_u = in.h_u * in.h_u.adjoint();
    prob.gamma_u = params.gamma_u;
    prob.sigma_u2 = params.sigma_u2;
    prob.power_budget = params.power_budget;

    const SdpSolution sdp = solve_isac_sdp(prob, params.sdp);
    sol.status = sdp.status;
    if (sdp.status == SdpStatus::Infeasible)
        throw InfeasibleError("design_beams: SINR target exceeds the MRT bound", sdp.certificate);

    sol.predicted_objective = sdp.objective;
    sol.rank1_ratio_u = rank1_ratio(sdp.F_u, rank1_top(sdp.F_u).lambda1);
    sol.rank1_ratio_t = rank1_ratio(sdp.F_t, rank1_top(sdp.F_t).lambda1);

    const Rank1Beams beams =
        rank1_and_repair(sdp.F_u, sdp.F_t, prob.Q_t, in.h_u, params.gamma_u, params.sigma_u2, params.power_budget);
    sol.f_u = beams.f_u;
    sol.f_t = beams.f_t;
    sol.repaired = beams.repaired;
    sol.achieved_objective = quad_form(prob.Q_t, sol.f_u) + quad_form(prob.Q_t, sol.f_t);
    return sol;
}

std::vector<double> beam_pattern(const CVector &f, const ArrayGeometry &tx, const std::vector<double> &az_grid_rad)
{
    if (f.size() != static_cast<Eigen::Index>(tx.n_elements()))
        throw ContractError("beam_pattern: beam length differs from the array size");
    if (f.norm() == 0.0)
        throw ContractError("beam_pattern: zero beamforming vector");
    std::vector<double> gains;
    gains.reserve(az_grid_rad.size());
    for (double az : az_grid_rad)
        gains.push_back(std::norm(array_response(tx, az, 0.0).cwiseProduct(f).sum()));
    return gains;
}

void write_beam_pattern_csv(std::ostream &out, const CVector &f, const ArrayGeometry &tx)
{
    std::vector<double> grid_deg;
    for (int i = -360; i <= 360; ++i)
        grid_deg.push_back(0.5 * i);
    std::vector<double> grid_rad;
    for (double d : grid_deg)
        grid_rad.push_back(d * kPi / 180.0);
    const std::vector<double> g = beam_pattern(f, tx, grid_rad);
    out << "az_deg,gain_db\n";
    for (std::size_t i = 0; i < g.size(); ++i)
        out << format_number(grid_deg[i]) << ',' << format_number(to_db(g[i])) << '\n';
}

} // namespace isac
