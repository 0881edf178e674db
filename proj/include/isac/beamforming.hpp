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
#include "isac/scene.hpp"
#include "isac/sdp.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

namespace isac
{

/// How the sensing quadratic form Q_t is obtained.
enum class Strategy
{
    FullChannel,      // genie: Q_t = H_t^H H_t
    LosDirection,     // steer towards the geometric line of sight
    DtFixedReflector, // steer towards the single bounce off a configured reflector
    DtDominantPath,   // steer along the traced path with the largest partial gain
};

inline constexpr std::array<Strategy, 4> kAllStrategies = {Strategy::FullChannel, Strategy::LosDirection,
                                                           Strategy::DtFixedReflector, Strategy::DtDominantPath};

const char *to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

struct BeamSolution
{
    CVector f_u;
    CVector f_t;
    double predicted_objective = 0.0; // SDP optimum of the strategy's own Q_t
    double achieved_objective = 0.0;  // f_u^H Q_t f_u + f_t^H Q_t f_t after extraction and repair
    double rank1_ratio_u = 0.0;       // lambda_1 / trace
    double rank1_ratio_t = 0.0;
    bool repaired = false;
    bool used_fallback = false;       // DtDominantPath had no traced path and used the LoS direction
    SdpStatus status = SdpStatus::Optimal;
    std::optional<Direction> steering; // the direction used for steering-based strategies
};

/// Geometric direction from bs to target; vertical offsets get azimuth 0.
Direction los_direction(const Vec3 &bs, const Vec3 &target);

/// Q = conj(a) a^T for the transmit steering vector a(az, el); rank 1 with trace N_t.
CMatrix build_q_direction(const ArrayGeometry &tx, double az_rad, double el_rad);

/// Q = H_t^H H_t.
CMatrix build_q_full(const CMatrix &H_t);

struct DominantPath
{
    Direction aod;
    cdouble beta_star{0.0, 0.0};
    std::size_t index = 0;
};

/// Path with the largest |beta1|; ties go to the shorter delay, then the smaller azimuth.
/// Throws NoPathError on an empty list.
DominantPath dominant_partial_direction(const std::vector<PartialPath> &paths);

/// Everything a strategy may need; which fields are required depends on the strategy.
struct BeamInputs
{
    CVector h_u;
    ArrayGeometry tx;
    std::optional<CMatrix> H_t;                          // FullChannel
    std::optional<Vec3> bs_position;                     // LoS, DtFixedReflector, DtDominantPath fallback
    std::optional<Vec3> target_position;
    std::optional<Facet> fixed_reflector;                // DtFixedReflector
    std::optional<std::vector<PartialPath>> partial_paths; // DtDominantPath
};

struct DesignParams
{
    double gamma_u = 10.0; // linear
    double sigma_u2 = 1.0;
    double power_budget = 1.0;
    SdpOptions sdp;
};

/// Sensing form used by a strategy (also reports the steering direction, if any).
CMatrix strategy_q(Strategy strategy, const BeamInputs &in, std::optional<Direction> *steering = nullptr,
                   bool *used_fallback = nullptr);

/// Builds Q_t for the strategy, solves the relaxation, extracts rank-1 beams and repairs feasibility.
/// Throws InfeasibleError when the SINR target is out of reach and ContractError on missing inputs.
BeamSolution design_beams(Strategy strategy, const BeamInputs &in, const DesignParams &params);

struct Rank1Beams
{
    CVector f_u;
    CVector f_t;
    bool repaired = false;
};

/// First reduces (F_u, F_t) to a rank-1 pair with the same power, SINR terms and sensing objective,
/// then takes f = sqrt(lambda_1) v_1 per matrix. If that pair misses the SINR target, keeps both directions and
/// re-solves the two-variable power split by vertex enumeration; failing that, falls back to
/// full-power MRT with no sensing beam.
Rank1Beams rank1_and_repair(const CMatrix &F_u, const CMatrix &F_t, const CMatrix &Q_t, const CVector &h_u,
                            double gamma_u, double sigma_u2, double power_budget);

/// |a_tx(az, 0)^T f|^2 for each azimuth of the grid.
std::vector<double> beam_pattern(const CVector &f, const ArrayGeometry &tx, const std::vector<double> &az_grid_rad);

/// az_deg,gain_db on a 0.5 degree grid over [-180, 180].
void write_beam_pattern_csv(std::ostream &out, const CVector &f, const ArrayGeometry &tx);

} // namespace isac
