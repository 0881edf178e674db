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
#include "isac/geometry.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace isac
{

struct Material
{
    std::string name;
    double reflection_amplitude = 0.0;  // specular amplitude coefficient
    double penetration_amplitude = 0.0; // through-facet amplitude factor
};

/// Planar rectangle. Corners are ordered around the boundary, so corners[2] = corners[1] + corners[3] - corners[0].
/// Facets sharing a non-empty `group` are the faces of one thick wall: a segment crossing
/// several of them is charged a single penetration factor.
struct Facet
{
    std::array<Vec3, 4> corners;
    std::size_t material = 0;
    std::string group;

    Vec3 origin() const { return corners[0]; }
    Vec3 edge_u() const { return corners[1] - corners[0]; }
    Vec3 edge_v() const { return corners[3] - corners[0]; }
    Vec3 normal() const { return edge_u().cross(edge_v()).normalized(); }
    double area() const { return edge_u().cross(edge_v()).norm(); }

    /// Signed distance of p from the facet plane along normal().
    double signed_distance(const Vec3 &p) const { return normal().dot(p - corners[0]); }

    /// True when p (assumed on the plane) lies inside the rectangle, with tolerance tol in meters.
    bool contains(const Vec3 &p, double tol = 1e-9) const;
};

/// Axis-aligned horizontal rectangle at a fixed height.
struct Region
{
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;
    double z = 0.0;
};

struct Box
{
    Vec3 min = Vec3::Zero();
    Vec3 max = Vec3::Zero();

    bool contains(const Vec3 &p, double tol = 1e-9) const
    {
        return (p.array() >= min.array() - tol).all() && (p.array() <= max.array() + tol).all();
    }
};

/// The digital-twin environment: materials, facets, the base station and the sampling regions.
struct Scene
{
    int version = 1;
    double carrier_frequency_hz = 3.5e9;
    std::optional<Box> room;
    Vec3 bs_position = Vec3::Zero();
    ArrayGeometry tx_array;
    ArrayGeometry rx_array;
    std::vector<Material> materials;
    std::vector<Facet> facets;
    Region ue_region;
    Region target_region;
    std::optional<std::size_t> fixed_reflector_facet;

    double wavelength() const { return isac::wavelength(carrier_frequency_hz); }
    const Material &material_of(const Facet &f) const { return materials.at(f.material); }
};

struct Violation
{
    std::string where;
    std::string message;
};

using ValidationReport = std::vector<Violation>;

inline constexpr int kSceneSchemaVersion = 1;

/// Checks every scene invariant; never throws, an empty report means valid.
ValidationReport validate_scene(const Scene &s);

/// Parses a scene JSON document and validates it.
/// Throws SceneError with line/column for syntax errors, the field path for schema errors,
/// and the first violation (e.g. "facets[1]: ...") for invariant failures.
Scene load_scene(const std::string &document);
Scene load_scene_file(const std::string &path);

/// Parses without running validate_scene (schema errors still throw).
Scene parse_scene(const std::string &document);
std::string read_scene_file(const std::string &path);

std::string serialize_scene(const Scene &s);

} // namespace isac
