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

#include "isac/array.hpp"
#include "isac/geometry.hpp"

#include <cmath>

namespace isac
{

Direction direction_of(const Vec3 &d)
{
    const double horizontal = std::hypot(d.x(), d.y());
    Direction out;
    out.az_rad = horizontal == 0.0 ? 0.0 : std::atan2(d.y(), d.x());
    out.el_rad = std::atan2(d.z(), horizontal);
    return out;
}

Vec3 unit_vector(const Direction &dir)
{
    const double ce = std::cos(dir.el_rad);
    return {ce * std::cos(dir.az_rad), ce * std::sin(dir.az_rad), std::sin(dir.el_rad)};
}

ArrayGeometry ArrayGeometry::ula(std::size_t n, double spacing_wavelengths, const Vec3 &axis)
{
    ArrayGeometry g;
    const Vec3 step = axis.normalized() * spacing_wavelengths;
    g.element_positions.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        g.element_positions.push_back(step * static_cast<double>(i));
    return g;
}

} // namespace isac
