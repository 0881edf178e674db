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

#include "isac/channel.hpp"
#include "isac/errors.hpp"
#include "test_util.hpp"

#include <catch_amalgamated.hpp>

using namespace isac;
using Catch::Approx;

namespace
{

PropagationPath path(cdouble gain, double aod_az, double aoa_az = 0.0, double aod_el = 0.0, double aoa_el = 0.0)
{
    PropagationPath p;
    p.complex_gain = gain;
    p.aod_az_rad = aod_az;
    p.aod_el_rad = aod_el;
    p.aoa_az_rad = aoa_az;
    p.aoa_el_rad = aoa_el;
    return p;
}

ArrayGeometry y_ula(std::size_t n) { return ArrayGeometry::ula(n, 0.5, Vec3::UnitY()); }

constexpr double kDeg = kPi / 180.0;

} // namespace

TEST_CASE("array_response examples on a y-axis ULA", "[channel]")
{
    const CVector broadside = array_response(y_ula(4), 0.0, 0.0);
    CHECK((broadside - CVector::Ones(4)).norm() < 1e-15);

    const CVector endfire = array_response(y_ula(2), 90.0 * kDeg, 0.0);
    CHECK(std::abs(endfire(0) - 1.0) < 1e-15);
    CHECK(std::abs(endfire(1) + 1.0) < 1e-15);

    const CVector a30 = array_response(y_ula(4), 30.0 * kDeg, 0.0);
    const cdouble j(0.0, 1.0);
    const CVector expected = (CVector(4) << 1.0, j, -1.0, -j).finished();
    CHECK((a30 - expected).norm() < 1e-14);
}

TEST_CASE("array_response entries have unit magnitude", "[channel][property]")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    ArrayGeometry g;
    std::normal_distribution<double> n(0.0, 3.0);
    for (int i = 0; i < 7; ++i)
        g.element_positions.emplace_back(n(rng), n(rng), n(rng));
    for (int trial = 0; trial < 100; ++trial)
    {
        const double az = u(rng), el = 0.5 * u(rng);
        const CVector a = array_response(g, az, el);
        for (Eigen::Index i = 0; i < a.size(); ++i)
            CHECK(std::abs(a(i)) == Approx(1.0).epsilon(1e-15));
        // the opposite propagation direction conjugates every entry
        const CVector b = array_response(g, az + kPi, -el);
        CHECK((b - a.conjugate()).norm() < 1e-12);
    }
}

TEST_CASE("comm_channel examples", "[channel]")
{
    const ArrayGeometry g = y_ula(4);
    CHECK((comm_channel({path(1.0, 0.0)}, g) - CVector::Ones(4)).norm() < 1e-15);
    CHECK(comm_channel({path(1.0, 0.3), path(-1.0, 0.3)}, g).norm() < 1e-15);
    CHECK(comm_channel({}, g).norm() == 0.0);
}

TEST_CASE("comm_channel matches direct summation", "[channel]")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    const ArrayGeometry g = y_ula(8);
    std::vector<PropagationPath> paths;
    for (int i = 0; i < 3; ++i)
        paths.push_back(path(std::polar(0.1 + 0.3 * i, u(rng)), u(rng), 0.0, 0.2 * u(rng)));
    const CVector h = comm_channel(paths, g);
    for (int n = 0; n < 8; ++n)
    {
        cdouble sum = 0.0;
        for (const auto &p : paths)
        {
            const Vec3 k = unit_vector(p.aod());
            sum += std::conj(p.complex_gain) * std::exp(cdouble(0.0, -2.0 * kPi * 0.5 * n * k.y()));
        }
        CHECK(std::abs(h(n) - sum) <= 1e-12);
    }
    // h^H x reproduces sum_l alpha_l a^T(AoD_l) x
    const CVector x = test::random_vector(rng, 8);
    cdouble model = 0.0;
    for (const auto &p : paths)
        model += p.complex_gain * array_response(g, p.aod()).cwiseProduct(x).sum();
    CHECK(std::abs(h.dot(x) - model) <= 1e-12 * std::abs(model));
}

TEST_CASE("sensing_channel examples", "[channel]")
{
    const ArrayGeometry tx = y_ula(4), rx = y_ula(3);
    const CMatrix H = sensing_channel({path(1.0, 0.4, -0.2)}, tx, rx);
    CHECK(H.rows() == 3);
    CHECK(H.cols() == 4);
    CHECK(H.norm() == Approx(std::sqrt(12.0)));
    Eigen::JacobiSVD<CMatrix> svd1(H);
    CHECK(svd1.singularValues()(1) < 1e-12);

    const CMatrix H2 = sensing_channel({path(1.0, 0.4, -0.2), path(0.5, -0.7, 0.9)}, tx, rx);
    Eigen::JacobiSVD<CMatrix> svd2(H2);
    CHECK(svd2.singularValues()(1) > 1e-3);
    CHECK(svd2.singularValues()(2) < 1e-12);

    CHECK(sensing_channel({}, tx, rx).norm() == 0.0);
}

TEST_CASE("sensing_channel matches direct summation", "[channel]")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    const ArrayGeometry tx = y_ula(5), rx = y_ula(6);
    std::vector<PropagationPath> paths;
    for (int i = 0; i < 4; ++i)
        paths.push_back(path(std::polar(0.2 + 0.1 * i, u(rng)), u(rng), u(rng), 0.3 * u(rng), 0.3 * u(rng)));
    const CMatrix H = sensing_channel(paths, tx, rx);
    for (int r = 0; r < 6; ++r)
        for (int t = 0; t < 5; ++t)
        {
            cdouble sum = 0.0;
            for (const auto &p : paths)
            {
                const double phase_r = 0.5 * r * unit_vector(p.aoa()).y();
                const double phase_t = 0.5 * t * unit_vector(p.aod()).y();
                sum += p.complex_gain * std::exp(cdouble(0.0, 2.0 * kPi * (phase_r + phase_t)));
            }
            CHECK(std::abs(H(r, t) - sum) <= 1e-12);
        }
}

TEST_CASE("evaluate_link examples", "[channel]")
{
    ChannelSet cs;
    cs.h_u = (CVector(2) << 1.0, 0.0).finished();
    cs.H_t = CMatrix::Zero(2, 2);
    const CVector f_u = (CVector(2) << 0.6, 0.0).finished();
    const CVector f_t = (CVector(2) << 0.0, cdouble(0.0, 0.7)).finished();
    const LinkMetrics m = evaluate_link(f_u, f_t, cs, 0.1, 1.0);
    CHECK(m.sinr_u == Approx(0.36 / 0.1));
    CHECK(m.snr_t == 0.0);

    const CVector big = (CVector(2) << 1.0, 1.0).finished();
    CHECK_THROWS_AS(evaluate_link(big, f_t, cs, 0.1, 1.0), ContractError);
    CHECK_THROWS_AS(evaluate_link(f_u, f_t, cs, 0.0, 1.0), ContractError);
    CHECK_THROWS_AS(evaluate_link(f_u, f_t, cs, 0.1, -1.0), ContractError);
}

TEST_CASE("evaluate_link agrees with the quadratic-form evaluation", "[channel][property]")
{
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100; ++trial)
    {
        ChannelSet cs{test::random_vector(rng, 6), test::random_matrix(rng, 5, 6)};
        CVector f_u = test::random_vector(rng, 6);
        CVector f_t = test::random_vector(rng, 6);
        const double scale = std::sqrt(f_u.squaredNorm() + f_t.squaredNorm());
        f_u /= scale;
        f_t /= scale;
        const LinkMetrics m = evaluate_link(f_u, f_t, cs, 0.3, 0.2);
        const CMatrix Qu = cs.h_u * cs.h_u.adjoint();
        const CMatrix Qt = cs.H_t.adjoint() * cs.H_t;
        CHECK(m.sinr_u == Approx(quad_form(Qu, f_u) / (quad_form(Qu, f_t) + 0.3)).epsilon(1e-12));
        CHECK(m.snr_t == Approx((quad_form(Qt, f_u) + quad_form(Qt, f_t)) / 0.2).epsilon(1e-10));

        // scaling every path gain by c scales the received powers by |c|^2
        const cdouble c = std::polar(2.5, 0.8);
        const ChannelSet scaled{std::conj(c) * cs.h_u, c * cs.H_t};
        CHECK(std::norm(scaled.h_u.dot(f_u)) == Approx(std::norm(c) * std::norm(cs.h_u.dot(f_u))).epsilon(1e-12));
    }
}
