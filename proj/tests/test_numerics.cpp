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

#include "isac/errors.hpp"
#include "isac/numerics.hpp"
#include "test_util.hpp"

#include <catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

using namespace isac;
using Catch::Approx;

TEST_CASE("herm_eig on the identity", "[numerics]")
{
    const EigDecomposition d = herm_eig(CMatrix::Identity(3, 3));
    for (int i = 0; i < 3; ++i)
        CHECK(d.eigenvalues(i) == Approx(1.0).margin(1e-15));
    CHECK((d.eigenvectors.adjoint() * d.eigenvectors - CMatrix::Identity(3, 3)).norm() < 1e-14);
}

TEST_CASE("herm_eig on the swap matrix", "[numerics]")
{
    CMatrix A(2, 2);
    A << 0.0, 1.0, 1.0, 0.0;
    const EigDecomposition d = herm_eig(A);
    CHECK(d.eigenvalues(0) == Approx(1.0).margin(1e-15));
    CHECK(d.eigenvalues(1) == Approx(-1.0).margin(1e-15));
    const double r = 1.0 / std::sqrt(2.0);
    // phase convention makes the first entry real and positive, so the vectors are exact
    CHECK(std::abs(d.eigenvectors(0, 0) - r) < 1e-15);
    CHECK(std::abs(d.eigenvectors(1, 0) - r) < 1e-15);
    CHECK(std::abs(d.eigenvectors(0, 1) - r) < 1e-15);
    CHECK(std::abs(d.eigenvectors(1, 1) + r) < 1e-15);
}

TEST_CASE("herm_eig residuals on random 16x16 matrices", "[numerics]")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial)
    {
        const CMatrix A = test::random_hermitian(rng, 16);
        const EigDecomposition d = herm_eig(A);
        const double scale = A.norm();
        for (int k = 0; k < 16; ++k)
        {
            const CVector v = d.eigenvectors.col(k);
            CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
            CHECK((A * v - d.eigenvalues(k) * v).norm() <= 1e-10 * scale);
            if (k > 0)
                CHECK(d.eigenvalues(k) <= d.eigenvalues(k - 1));
        }
        const CMatrix rebuilt = d.eigenvectors * d.eigenvalues.asDiagonal() * d.eigenvectors.adjoint();
        CHECK((A - rebuilt).norm() <= 1e-9 * scale);
    }
}

TEST_CASE("herm_eig eigenvalues agree with Eigen's solver", "[numerics]")
{
    std::mt19937_64 rng(11);
    for (int n : {1, 2, 5, 16, 33})
    {
        const CMatrix A = test::random_hermitian(rng, n);
        Eigen::SelfAdjointEigenSolver<CMatrix> ref(A);
        const Eigen::VectorXd expected = ref.eigenvalues().reverse();
        CHECK((herm_eig(A).eigenvalues - expected).norm() <= 1e-11 * A.norm());
    }
}

TEST_CASE("herm_eig handles repeated eigenvalues and diagonal input", "[numerics]")
{
    CMatrix D = CMatrix::Zero(4, 4);
    D.diagonal() << 3.0, -1.0, 3.0, 0.5;
    const EigDecomposition d = herm_eig(D);
    CHECK(d.eigenvalues(0) == 3.0);
    CHECK(d.eigenvalues(1) == 3.0);
    CHECK(d.eigenvalues(2) == 0.5);
    CHECK(d.eigenvalues(3) == -1.0);
}

TEST_CASE("herm_eig rejects bad input", "[numerics]")
{
    CHECK_THROWS_AS(herm_eig(CMatrix::Zero(2, 3)), ContractError);
    CMatrix A(2, 2);
    A << 1.0, cdouble(0.0, 1.0), cdouble(0.0, 1.0), 1.0;
    CHECK_THROWS_AS(herm_eig(A), ContractError);
}

TEST_CASE("rank1_top examples", "[numerics]")
{
    CMatrix D = CMatrix::Zero(2, 2);
    D(0, 0) = 2.0;
    TopEigenpair t = rank1_top(D);
    CHECK(t.lambda1 == Approx(2.0));
    CHECK(std::abs(t.v1(0) - 1.0) < 1e-15);
    CHECK(std::abs(t.v1(1)) < 1e-15);

    CMatrix ones = CMatrix::Ones(2, 2);
    t = rank1_top(ones);
    CHECK(t.lambda1 == Approx(2.0));
    CHECK(std::abs(t.v1(0) - 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(t.v1(1) - 1.0 / std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("rank1_top approximation error is bounded by the discarded spectrum", "[numerics]")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial)
    {
        const CMatrix F = test::random_psd(rng, 8, 1 + trial % 8);
        const TopEigenpair t = rank1_top(F);
        const EigDecomposition d = herm_eig(F);
        const double tail = d.eigenvalues.tail(7).cwiseMax(0.0).sum();
        CHECK((t.lambda1 * t.v1 * t.v1.adjoint() - F).norm() <= tail + 1e-9 * F.norm());
    }
}

TEST_CASE("rank1_top is deterministic and phase-normalized", "[numerics]")
{
    std::mt19937_64 rng(5);
    const CMatrix F = test::random_psd(rng, 6, 2);
    const TopEigenpair a = rank1_top(F);
    const TopEigenpair b = rank1_top(F);
    CHECK(a.lambda1 == b.lambda1);
    CHECK(a.v1 == b.v1);
    CHECK(a.v1(0).imag() == 0.0);
    CHECK(a.v1(0).real() >= 0.0);

    // a phase rotation of the matrix's eigenbasis must not change the chosen representative
    const CVector w = test::random_vector(rng, 4).normalized();
    const CMatrix P1 = w * w.adjoint();
    const cdouble phase = std::polar(1.0, 1.234);
    const CVector w2 = phase * w;
    CHECK((rank1_top(P1).v1 - rank1_top(CMatrix(w2 * w2.adjoint())).v1).norm() < 1e-12);
}

TEST_CASE("rank1_top rejects indefinite matrices", "[numerics]")
{
    CMatrix A = CMatrix::Zero(2, 2);
    A(0, 0) = 1.0;
    A(1, 1) = -0.5;
    CHECK_THROWS_AS(rank1_top(A), NotPsdError);
    A(1, 1) = -1e-12;
    CHECK_NOTHROW(rank1_top(A));
}

TEST_CASE("quad_form examples", "[numerics]")
{
    CVector v(2);
    v << 3.0, 4.0;
    CHECK(quad_form(CMatrix::Identity(2, 2), v) == Approx(25.0));
    CMatrix D = CMatrix::Zero(2, 2);
    D(0, 0) = 1.0;
    CVector e1(2);
    e1 << 0.0, 1.0;
    CHECK(quad_form(D, e1) == 0.0);
    CHECK_THROWS_AS(quad_form(D, CVector::Ones(3)), ContractError);
}

TEST_CASE("quad_form matches the explicit triple sum", "[numerics]")
{
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial)
    {
        const CMatrix A = test::random_hermitian(rng, 5);
        const CVector v = test::random_vector(rng, 5);
        cdouble sum = 0.0;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                sum += std::conj(v(i)) * A(i, j) * v(j);
        CHECK(quad_form(A, v) == Approx(sum.real()).epsilon(1e-12).margin(1e-12));
    }
}

TEST_CASE("quad_form is non-negative on PSD matrices", "[numerics][property]")
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 500; ++trial)
    {
        const CMatrix A = test::random_psd(rng, 6, 1 + trial % 6);
        CHECK(quad_form(A, test::random_vector(rng, 6)) >= -1e-9);
    }
}
