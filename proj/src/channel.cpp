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

#include "isac/channel.hpp"

#include "isac/errors.hpp"

#include <cmath>
#include <string>

namespace isac
{

CVector array_response(const ArrayGeometry &g, double az_rad, double el_rad)
{
    const Vec3 k = unit_vector({az_rad, el_rad});
    CVector a(static_cast<Eigen::Index>(g.n_elements()));
    for (std::size_t n = 0; n < g.n_elements(); ++n)
    {
        // reduce the phase to a single turn before scaling by 2 pi
        const double turns = std::remainder(k.dot(g.element_positions[n]), 1.0);
        a(static_cast<Eigen::Index>(n)) = std::polar(1.0, 2.0 * kPi * turns);
    }
    return a;
}

CVector comm_channel(const std::vector<PropagationPath> &paths, const ArrayGeometry &tx)
{
    CVector h = CVector::Zero(static_cast<Eigen::Index>(tx.n_elements()));
    for (const auto &p : paths)
        h += std::conj(p.complex_gain) * array_response(tx, p.aod()).conjugate();
    return h;
}

CMatrix sensing_channel(const std::vector<PropagationPath> &paths, const ArrayGeometry &tx, const ArrayGeometry &rx)
{
    const auto nt = static_cast<Eigen::Index>(tx.n_elements());
    const auto nr = static_cast<Eigen::Index>(rx.n_elements());
    CMatrix H = CMatrix::Zero(nr, nt);
    for (const auto &p : paths)
        H.noalias() += p.complex_gain * array_response(rx, p.aoa()) * array_response(tx, p.aod()).transpose();
    return H;
}

LinkMetrics evaluate_link(const CVector &f_u, const CVector &f_t, const ChannelSet &cs, double sigma_u2,
                          double sigma_t2, double power_budget)
{
    if (!(sigma_u2 > 0.0) || !(sigma_t2 > 0.0))
        throw ContractError("evaluate_link: noise powers must be positive");
    if (f_u.size() != cs.h_u.size() || f_t.size() != cs.h_u.size() || cs.H_t.cols() != cs.h_u.size())
        throw ContractError("evaluate_link: dimension mismatch");
    const double power = f_u.squaredNorm() + f_t.squaredNorm();
    if (power > power_budget + 1e-9)
        throw ContractError("evaluate_link: beams use power " + std::to_string(power) + " above budget " +
                            std::to_string(power_budget));
    const double signal = std::norm(cs.h_u.dot(f_u));
    const double interference = std::norm(cs.h_u.dot(f_t));
    LinkMetrics m;
    m.sinr_u = signal / (interference + sigma_u2);
    m.snr_t = ((cs.H_t * f_u).squaredNorm() + (cs.H_t * f_t).squaredNorm()) / sigma_t2;
    return m;
}

} // namespace isac
