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

#include "isac/numerics.hpp"

#include "isac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace isac
{

namespace
{

constexpr int kMaxSweeps = 100;

double off_diagonal_norm2(const CMatrix &A)
{
    double s = 0.0;
    const auto n = A.rows();
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            if (i != j)
                s += std::norm(A(i, j));
    return s;
}

// Zero A(p,q) with the unitary G = diag(1, e^{-i phi}) * [[c, s], [-s, c]] acting on rows/cols p,q.
void jacobi_rotate(CMatrix &A, CMatrix &V, Eigen::Index p, Eigen::Index q)
{
    const cdouble apq = A(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0)
        return;

    const double app = A(p, p).real();
    const double aqq = A(q, q).real();
    const cdouble phase = apq / mag; // e^{i phi}

    const double zeta = (aqq - app) / (2.0 * mag);
    const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const cdouble g_qp = -s * std::conj(phase);
    const cdouble g_qq = c * std::conj(phase);

    const auto n = A.rows();
    // A <- A G
    for (Eigen::Index k = 0; k < n; ++k)
    {
        const cdouble akp = A(k, p);
        const cdouble akq = A(k, q);
        A(k, p) = c * akp + g_qp * akq;
        A(k, q) = s * akp + g_qq * akq;
    }
    // A <- G^H A
    for (Eigen::Index k = 0; k < n; ++k)
    {
        const cdouble apk = A(p, k);
        const cdouble aqk = A(q, k);
        A(p, k) = c * apk + std::conj(g_qp) * aqk;
        A(q, k) = s * apk + std::conj(g_qq) * aqk;
    }
    A(p, q) = 0.0;
    A(q, p) = 0.0;
    A(p, p) = A(p, p).real();
    A(q, q) = A(q, q).real();

    for (Eigen::Index k = 0; k < n; ++k)
    {
        const cdouble vkp = V(k, p);
        const cdouble vkq = V(k, q);
        V(k, p) = c * vkp + g_qp * vkq;
        V(k, q) = s * vkp + g_qq * vkq;
    }
}

void fix_phase(Eigen::Ref<CVector> v)
{
    const double norm = v.norm();
    if (norm == 0.0)
        return;
    v /= norm;
    for (Eigen::Index i = 0; i < v.size(); ++i)
    {
        const double mag = std::abs(v(i));
        if (mag > 1e-12)
        {
            v *= std::conj(v(i)) / mag;
            v(i) = mag;
            return;
        }
    }
}

} // namespace

bool is_hermitian(const CMatrix &A, double rel_tol)
{
    if (A.rows() != A.cols())
        return false;
    const double scale = A.norm();
    return (A - A.adjoint()).norm() <= rel_tol * scale;
}

EigDecomposition herm_eig(const CMatrix &A)
{
    if (A.rows() != A.cols() || A.rows() == 0)
        throw ContractError("herm_eig: matrix must be square and non-empty, got " +
                            std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
    if (!A.allFinite())
        throw ContractError("herm_eig: matrix has non-finite entries");
    if (!is_hermitian(A))
        throw ContractError("herm_eig: matrix is not Hermitian");

    const auto n = A.rows();
    CMatrix work = 0.5 * (A + A.adjoint());
    CMatrix V = CMatrix::Identity(n, n);

    const double total = work.squaredNorm();
    const double stop = total * 1e-32;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep)
    {
        if (off_diagonal_norm2(work) <= stop)
            break;
        for (Eigen::Index p = 0; p < n - 1; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q)
                jacobi_rotate(work, V, p, q);
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return work(a, a).real() > work(b, b).real();
    });

    EigDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
    {
        const auto src = order[static_cast<std::size_t>(k)];
        out.eigenvalues(k) = work(src, src).real();
        out.eigenvectors.col(k) = V.col(src);
        fix_phase(out.eigenvectors.col(k));
    }
    return out;
}

TopEigenpair rank1_top(const CMatrix &A)
{
    const EigDecomposition eig = herm_eig(A);
    const double lmax = eig.eigenvalues(0);
    const double lmin = eig.eigenvalues(eig.eigenvalues.size() - 1);
    if (lmin < -1e-9 * std::max(1.0, std::abs(lmax)))
        throw NotPsdError("rank1_top: matrix is not PSD (min eigenvalue " + std::to_string(lmin) + ")");
    return {std::max(lmax, 0.0), eig.eigenvectors.col(0)};
}

double quad_form(const CMatrix &A, const CVector &v)
{
    if (A.rows() != A.cols() || A.cols() != v.size())
        throw ContractError("quad_form: dimension mismatch");
    const cdouble z = v.dot(A * v); // Eigen's dot conjugates the first argument
    const double bound = 1e-10 * std::max(std::abs(z), A.norm() * v.squaredNorm());
    if (std::abs(z.imag()) > bound)
        throw ContractError("quad_form: matrix is not Hermitian (imaginary part " +
                            std::to_string(z.imag()) + ")");
    return z.real();
}

} // namespace isac
