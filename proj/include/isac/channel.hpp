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

#pragma once

#include "isac/array.hpp"
#include "isac/numerics.hpp"
#include "isac/raytracer.hpp"

#include <vector>

namespace isac
{

/// Communication channel h_u (N_t) and sensing channel H_t (N_r x N_t) for one trial.
/// Convention: y_u = h_u^H x and y_t = H_t x.
struct ChannelSet
{
    CVector h_u;
    CMatrix H_t;
};

struct LinkMetrics
{
    double sinr_u = 0.0; // linear
    double snr_t = 0.0;  // linear
};

/// Entry n = exp(+j 2 pi k(az, el) . d_n), d_n in wavelengths.
CVector array_response(const ArrayGeometry &g, double az_rad, double el_rad);
inline CVector array_response(const ArrayGeometry &g, const Direction &d) { return array_response(g, d.az_rad, d.el_rad); }

/// h_u = sum_l conj(alpha_l) conj(a_tx(AoD_l)), so that h_u^H x = sum_l alpha_l a_tx^T(AoD_l) x.
/// An empty path list yields the zero vector.
CVector comm_channel(const std::vector<PropagationPath> &paths, const ArrayGeometry &tx);

/// H_t = sum_l alpha_l a_rx(AoA_l) a_tx(AoD_l)^T.
CMatrix sensing_channel(const std::vector<PropagationPath> &paths, const ArrayGeometry &tx, const ArrayGeometry &rx);

/// SINR_u = |h^H f_u|^2 / (|h^H f_t|^2 + sigma_u^2), SNR_t = (||H f_u||^2 + ||H f_t||^2) / sigma_t^2.
/// Throws ContractError if ||f_u||^2 + ||f_t||^2 > power_budget + 1e-9 or a noise power is not positive.
LinkMetrics evaluate_link(const CVector &f_u, const CVector &f_t, const ChannelSet &cs, double sigma_u2,
                          double sigma_t2, double power_budget = 1.0);

} // namespace isac
