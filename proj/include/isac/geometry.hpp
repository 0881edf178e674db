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

#include <Eigen/Dense>

namespace isac
{

using Vec3 = Eigen::Vector3d;

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kPi = 3.14159265358979323846;

inline double wavelength(double carrier_frequency_hz) { return kSpeedOfLight / carrier_frequency_hz; }

/// Azimuth/elevation pair in radians. Azimuth is measured in the x-y plane from +x towards +y,
/// elevation from the x-y plane towards +z.
struct Direction
{
    double az_rad = 0.0;
    double el_rad = 0.0;
};

/// Direction of the vector d. A vertical vector gets azimuth 0 by convention.
Direction direction_of(const Vec3 &d);

/// Unit propagation vector k = (cos el cos az, cos el sin az, sin el).
Vec3 unit_vector(const Direction &dir);

} // namespace isac
