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

#include <complex>

namespace isac
{

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Spectral decomposition of a Hermitian matrix.
/// Eigenvalues are sorted in descending order, column k of `eigenvectors` belongs to eigenvalue k.
/// Every eigenvector has unit norm and its first non-negligible entry is real and non-negative.
struct EigDecomposition
{
    Eigen::VectorXd eigenvalues;
    CMatrix eigenvectors;
};

struct TopEigenpair
{
    double lambda1 = 0.0;
    CVector v1;
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
/// Throws ContractError for non-square input or when ||A - A^H||_F > 1e-12 ||A||_F.
EigDecomposition herm_eig(const CMatrix &A);

/// Largest eigenpair of a Hermitian PSD matrix (rank-1 approximation lambda1 * v1 v1^H).
/// Throws NotPsdError when an eigenvalue lies below -1e-9 * max(1, lambda_max).
TopEigenpair rank1_top(const CMatrix &A);

/// Real quadratic form v^H A v for Hermitian A.
double quad_form(const CMatrix &A, const CVector &v);

bool is_hermitian(const CMatrix &A, double rel_tol = 1e-12);

} // namespace isac
