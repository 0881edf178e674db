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

#include <stdexcept>
#include <string>

namespace isac
{

// Precondition or shape contract broken by the caller.
class ContractError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

class NotPsdError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Raised when the SINR target cannot be met with the available power.
class InfeasibleError : public std::runtime_error
{
public:
    InfeasibleError(const std::string &what, double certificate)
        : std::runtime_error(what), certificate_(certificate) {}

    // Farkas value P * lambda_max(Q_u) / gamma - sigma^2; negative proves infeasibility.
    double certificate() const noexcept { return certificate_; }

private:
    double certificate_;
};

class SceneError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class NoPathError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace isac
