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

#include "isac/geometry.hpp"
#include "isac/numerics.hpp"
#include "isac/scene.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace isac
{

enum class InteractionKind
{
    Reflection,
    Penetration,
    TargetScatter,
};

struct Interaction
{
    InteractionKind kind = InteractionKind::Reflection;
    std::optional<std::size_t> facet; // absent for TargetScatter
    Vec3 point = Vec3::Zero();
    double amplitude_factor = 1.0;
};

/// A traced ray between two points: gain = lambda/(4 pi L) * prod(amplitude factors) * exp(-j 2 pi f_c L / c).
/// For composed backscatter paths the spreading term is applied per hop instead.
struct PropagationPath
{
    std::vector<Interaction> interactions;
    double total_length_m = 0.0;
    double delay_s = 0.0;
    cdouble complex_gain{0.0, 0.0};
    double aod_az_rad = 0.0;
    double aod_el_rad = 0.0;
    double aoa_az_rad = 0.0;
    double aoa_el_rad = 0.0;

    std::size_t n_reflections() const;
    bool has_target() const;
    Direction aod() const { return {aod_az_rad, aod_el_rad}; }
    Direction aoa() const { return {aoa_az_rad, aoa_el_rad}; }
};

/// One BS-to-target path as seen by the digital twin: partial gain beta1 and departure angles.
struct PartialPath
{
    std::vector<Interaction> interactions;
    double total_length_m = 0.0;
    double delay_s = 0.0;
    cdouble beta1{0.0, 0.0};
    double aod_az_rad = 0.0;
    double aod_el_rad = 0.0;

    std::size_t n_reflections() const;
    Direction aod() const { return {aod_az_rad, aod_el_rad}; }
};

/// Reflection of p across the plane of `facet`.
Vec3 mirror_point(const Vec3 &p, const Facet &facet);

/// Image-method tracing between two points: the direct segment (attenuated by every wall it crosses)
/// plus all valid specular paths with up to max_reflections (<= 2) bounces.
/// Paths with zero amplitude are dropped; the rest are sorted by |gain| descending.
std::vector<PropagationPath> trace_point_to_point(const Scene &s, const Vec3 &tx, const Vec3 &rx,
                                                  int max_reflections = 2);

/// Traces BS -> target_pos and reports each path's partial gain and departure angles.
std::vector<PartialPath> partial_trace(const Scene &s, const Vec3 &target_pos, int max_reflections = 2);

/// Isotropic point-scatter amplitude sqrt(4 pi rcs) / lambda. Combined with the lambda/(4 pi d) spreading
/// of both hops, a line-of-sight backscatter has |gain|^2 = rcs lambda^2 / ((4 pi)^3 d^4).
double target_scatter_amplitude(double rcs_m2, double wavelength_m);

/// Pairs every inbound partial path with every outbound one (reverse of a partial path) through
/// a point scatterer: gain = beta_in * alpha_target * beta_out.
std::vector<PropagationPath> compose_sensing_paths(const Scene &s, const Vec3 &target_pos, double rcs_m2,
                                                   int max_reflections = 2);

/// Same pairing, from an existing partial path list.
std::vector<PropagationPath> compose_sensing_paths(const std::vector<PartialPath> &partial, const Vec3 &target_pos,
                                                   double rcs_m2, double wavelength_m);

/// Path dump: type,n_reflections,length_m,delay_ns,gain_db,aod_az_deg,aod_el_deg,aoa_az_deg,aoa_el_deg
void write_paths_csv(std::ostream &out, const std::vector<PropagationPath> &paths);

} // namespace isac
