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

#include <vector>

namespace isac
{

/// Antenna array described by element offsets (in wavelengths) from the array reference point.
struct ArrayGeometry
{
    std::vector<Vec3> element_positions;

    std::size_t n_elements() const noexcept { return element_positions.size(); }

    /// Uniform linear array of n elements along `axis` (normalized internally), first element at the origin.
    static ArrayGeometry ula(std::size_t n, double spacing_wavelengths, const Vec3 &axis);
};

} // namespace isac
