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

#include <string>
#include <vector>

namespace isac
{

/// Fixed 9-significant-digit rendering used by every CSV writer ("-inf"/"inf"/"nan" for non-finite).
std::string format_number(double v);

std::vector<std::string> split_csv_line(const std::string &line);

/// 10 log10(x); -inf for x == 0.
double to_db(double x);
double from_db(double db);

} // namespace isac
