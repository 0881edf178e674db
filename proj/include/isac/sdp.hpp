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

#include "isac/numerics.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace isac
{

enum class SdpStatus
{
    Optimal,
    Infeasible,
    MaxIter,
};

const char *to_string(SdpStatus s);

struct SdpOptions
{
    double tolerance = 1e-9; // relative primal/dual residual and duality gap
    int max_iterations = 100;
};

// ---------------------------------------------------------------------------
// Generic real block-diagonal SDP in standard form
//
//   minimize    sum_k <C_k, X_k>
//   subject to  sum_k <A_ik, X_k> = b_i,   i = 1..m
//               X_k >= 0 (PSD)
//
// with dual  maximize b^T y  s.t.  sum_i y_i A_ik + Z_k = C_k, Z_k >= 0.
// A 1x1 block is a nonnegative scalar.
// ---------------------------------------------------------------------------

struct BlockSdpProblem
{
    std::vector<Eigen::MatrixXd> C;              // one symmetric matrix per block
    std::vector<std::vector<Eigen::MatrixXd>> A; // A[i][k]
    Eigen::VectorXd b;
};

struct BlockSdpResult
{
    std::vector<Eigen::MatrixXd> X;
    std::vector<Eigen::MatrixXd> Z;
    Eigen::VectorXd y;
    SdpStatus status = SdpStatus::MaxIter;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double primal_residual = 0.0; // ||b - A(X)|| / (1 + ||b||)
    double dual_residual = 0.0;   // ||C - Z - A^T y||_F / (1 + ||C||_F)
    double gap = 0.0;             // |p - d| / (1 + |p| + |d|)
    int iterations = 0;
};

/// Infeasible-start primal-dual path-following method (HKM direction, Mehrotra predictor-corrector).
BlockSdpResult solve_block_sdp(const BlockSdpProblem &p, const SdpOptions &opts = {});

// ---------------------------------------------------------------------------
// Joint communication/sensing relaxation
//
//   maximize    tr(Q_t F_u) + tr(Q_t F_t)
//   subject to  tr(Q_u F_u)/gamma - tr(Q_u F_t) >= sigma_u^2
//               tr(F_u) + tr(F_t) <= P,   F_u, F_t Hermitian PSD
// ---------------------------------------------------------------------------

struct IsacSdpProblem
{
    CMatrix Q_t;   // sensing quadratic form, Hermitian PSD
    CMatrix Q_u;   // h_u h_u^H
    double gamma_u = 10.0;
    double sigma_u2 = 1.0;
    double power_budget = 1.0;
};

struct SdpSolution
{
    CMatrix F_u;
    CMatrix F_t;
    SdpStatus status = SdpStatus::MaxIter;
    double objective = 0.0;       // tr(Q_t (F_u + F_t)) in problem units
    double primal_residual = 0.0; // relative, of the normalized problem
    double dual_residual = 0.0;
    double gap = 0.0;
    int iterations = 0;
    double certificate = 0.0;     // P lambda_max(Q_u)/gamma - sigma^2; negative when infeasible
};

/// Largest SINR reachable with the whole budget (maximum-ratio transmission): P lambda_max(Q_u) / sigma_u^2.
double mrt_sinr_bound(const CMatrix &Q_u, double sigma_u2, double power_budget);

/// Solves the relaxation through a real embedding [[Re X, -Im X], [Im X, Re X]] of both variables.
/// Returns status Infeasible (zero matrices, certificate set) when gamma sigma^2 exceeds P lambda_max(Q_u).
SdpSolution solve_isac_sdp(const IsacSdpProblem &p, const SdpOptions &opts = {});

/// Real symmetric embedding of a Hermitian matrix and its inverse.
Eigen::MatrixXd real_embed(const CMatrix &H);
CMatrix real_unembed(const Eigen::MatrixXd &X);

// ---------------------------------------------------------------------------
// Test oracle for small arrays: search over rank-1 beam pairs.
// ---------------------------------------------------------------------------

struct OracleGrid
{
    int random_starts = 16;
    double initial_step = 0.5;
    double final_step = 1e-4;  // pattern-search resolution on the unnormalized direction coordinates
    double power_step_db = 0.1;
    std::uint64_t seed = 1;
};

struct OracleResult
{
    bool feasible = false;
    CVector f_u;
    CVector f_t;
    double objective = 0.0;
};

/// Discretized search over beam-pair directions (pattern search with halving steps from several
/// starts) and, per direction pair, a 0.1 dB grid over the communication power. Limited to N_t <= 4.
OracleResult brute_force_oracle(const IsacSdpProblem &p, const OracleGrid &grid = {});

} // namespace isac
