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

#include "isac/raytracer.hpp"

#include "isac/csv_io.hpp"
#include "isac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <string>

namespace isac
{

namespace
{

constexpr double kPlaneEps = 1e-9;

struct Crossing
{
    double t;
    std::size_t facet;
    Vec3 point;
};

// Facets crossed strictly inside the open segment a->b, ordered along the segment.
std::vector<Crossing> crossings(const Scene &s, const Vec3 &a, const Vec3 &b, std::size_t skip1, std::size_t skip2)
{
    std::vector<Crossing> out;
    for (std::size_t i = 0; i < s.facets.size(); ++i)
    {
        if (i == skip1 || i == skip2)
            continue;
        const Facet &f = s.facets[i];
        const double da = f.signed_distance(a);
        const double db = f.signed_distance(b);
        if (!((da > kPlaneEps && db < -kPlaneEps) || (da < -kPlaneEps && db > kPlaneEps)))
            continue;
        const double t = da / (da - db);
        const Vec3 p = a + t * (b - a);
        if (f.contains(p))
            out.push_back({t, i, p});
    }
    std::sort(out.begin(), out.end(), [](const Crossing &x, const Crossing &y) {
        return x.t < y.t || (x.t == y.t && x.facet < y.facet);
    });
    return out;
}

// Appends one penetration interaction per wall crossed (grouped facets charge once per segment).
void add_penetrations(const Scene &s, const Vec3 &a, const Vec3 &b, std::size_t skip1, std::size_t skip2,
                      std::vector<Interaction> &out)
{
    std::set<std::string> charged;
    for (const Crossing &c : crossings(s, a, b, skip1, skip2))
    {
        const Facet &f = s.facets[c.facet];
        if (!f.group.empty() && !charged.insert(f.group).second)
            continue;
        out.push_back({InteractionKind::Penetration, c.facet, c.point, s.material_of(f).penetration_amplitude});
    }
}

bool same_side(double da, double db)
{
    return (da > kPlaneEps && db > kPlaneEps) || (da < -kPlaneEps && db < -kPlaneEps);
}

cdouble carrier_phase(double length_m, double lambda)
{
    const double cycles = std::fmod(length_m / lambda, 1.0);
    return std::polar(1.0, -2.0 * kPi * cycles);
}

double amplitude_product(const std::vector<Interaction> &interactions)
{
    double a = 1.0;
    for (const auto &i : interactions)
        a *= i.amplitude_factor;
    return a;
}

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Builds a path through the given ordered vertices (tx, reflection points..., rx).
PropagationPath make_path(const Scene &s, const std::vector<Vec3> &vertices, const std::vector<std::size_t> &facets)
{
    PropagationPath path;
    double length = 0.0;
    for (std::size_t seg = 0; seg + 1 < vertices.size(); ++seg)
    {
        const std::size_t before = seg == 0 ? kNone : facets[seg - 1];
        const std::size_t after = seg < facets.size() ? facets[seg] : kNone;
        add_penetrations(s, vertices[seg], vertices[seg + 1], before, after, path.interactions);
        if (after != kNone)
            path.interactions.push_back({InteractionKind::Reflection, after, vertices[seg + 1],
                                         s.material_of(s.facets[after]).reflection_amplitude});
        length += (vertices[seg + 1] - vertices[seg]).norm();
    }
    const double lambda = s.wavelength();
    path.total_length_m = length;
    path.delay_s = length / kSpeedOfLight;
    const double amplitude = lambda / (4.0 * kPi * length) * amplitude_product(path.interactions);
    path.complex_gain = amplitude * carrier_phase(length, lambda);
    const Direction aod = direction_of(vertices[1] - vertices[0]);
    const Direction aoa = direction_of(vertices[vertices.size() - 2] - vertices.back());
    path.aod_az_rad = aod.az_rad;
    path.aod_el_rad = aod.el_rad;
    path.aoa_az_rad = aoa.az_rad;
    path.aoa_el_rad = aoa.el_rad;
    return path;
}

void check_endpoint(const Scene &s, const Vec3 &p, const char *what)
{
    if (!p.allFinite())
        throw ContractError(std::string("trace: non-finite ") + what + " point");
    if (s.room && !s.room->contains(p))
        throw ContractError(std::string("trace: ") + what + " point is outside the room");
}

// Point where segment a->b crosses the plane of f, given the signed distances of a and b.
Vec3 plane_hit(const Vec3 &a, const Vec3 &b, double da, double db) { return a + (da / (da - db)) * (b - a); }

bool sort_key_less(const PropagationPath &a, const PropagationPath &b)
{
    const double ga = std::abs(a.complex_gain);
    const double gb = std::abs(b.complex_gain);
    if (ga != gb)
        return ga > gb;
    if (a.delay_s != b.delay_s)
        return a.delay_s < b.delay_s;
    if (a.aod_az_rad != b.aod_az_rad)
        return a.aod_az_rad < b.aod_az_rad;
    return a.interactions.size() < b.interactions.size();
}

} // namespace

std::size_t PropagationPath::n_reflections() const
{
    return static_cast<std::size_t>(std::count_if(interactions.begin(), interactions.end(), [](const Interaction &i) {
        return i.kind == InteractionKind::Reflection;
    }));
}

bool PropagationPath::has_target() const
{
    return std::any_of(interactions.begin(), interactions.end(),
                       [](const Interaction &i) { return i.kind == InteractionKind::TargetScatter; });
}

std::size_t PartialPath::n_reflections() const
{
    return static_cast<std::size_t>(std::count_if(interactions.begin(), interactions.end(), [](const Interaction &i) {
        return i.kind == InteractionKind::Reflection;
    }));
}

Vec3 mirror_point(const Vec3 &p, const Facet &facet)
{
    const Vec3 n = facet.normal();
    return p - 2.0 * n.dot(p - facet.corners[0]) * n;
}

std::vector<PropagationPath> trace_point_to_point(const Scene &s, const Vec3 &tx, const Vec3 &rx, int max_reflections)
{
    if (max_reflections < 0 || max_reflections > 2)
        throw ContractError("trace: max_reflections must be in [0, 2]");
    check_endpoint(s, tx, "tx");
    check_endpoint(s, rx, "rx");
    if ((tx - rx).norm() <= kPlaneEps)
        throw ContractError("trace: coincident endpoints");

    std::vector<PropagationPath> paths;
    paths.push_back(make_path(s, {tx, rx}, {}));

    const auto &facets = s.facets;
    if (max_reflections >= 1)
    {
        for (std::size_t f = 0; f < facets.size(); ++f)
        {
            const Facet &F = facets[f];
            const double dt = F.signed_distance(tx);
            const double dr = F.signed_distance(rx);
            if (!same_side(dt, dr))
                continue;
            const Vec3 image = mirror_point(rx, F);
            const Vec3 r = plane_hit(tx, image, dt, -dr);
            if (!F.contains(r))
                continue;
            paths.push_back(make_path(s, {tx, r, rx}, {f}));
        }
    }

    if (max_reflections >= 2)
    {
        for (std::size_t f1 = 0; f1 < facets.size(); ++f1)
        {
            for (std::size_t f2 = 0; f2 < facets.size(); ++f2)
            {
                if (f1 == f2)
                    continue;
                const Facet &A = facets[f1];
                const Facet &B = facets[f2];
                const Vec3 t1 = mirror_point(tx, A);
                const Vec3 t2 = mirror_point(t1, B);
                const double d_t1 = B.signed_distance(t1);
                const double d_rx = B.signed_distance(rx);
                if (!same_side(d_t1, d_rx))
                    continue;
                const Vec3 r2 = plane_hit(t2, rx, -d_t1, d_rx);
                if (!B.contains(r2))
                    continue;
                const double a_tx = A.signed_distance(tx);
                const double a_r2 = A.signed_distance(r2);
                if (!same_side(a_tx, a_r2))
                    continue;
                const Vec3 r1 = plane_hit(t1, r2, -a_tx, a_r2);
                if (!A.contains(r1))
                    continue;
                if (!same_side(B.signed_distance(r1), d_rx))
                    continue;
                paths.push_back(make_path(s, {tx, r1, r2, rx}, {f1, f2}));
            }
        }
    }

    std::erase_if(paths, [](const PropagationPath &p) { return std::abs(p.complex_gain) == 0.0; });
    std::sort(paths.begin(), paths.end(), sort_key_less);
    return paths;
}

std::vector<PartialPath> partial_trace(const Scene &s, const Vec3 &target_pos, int max_reflections)
{
    std::vector<PartialPath> out;
    for (auto &p : trace_point_to_point(s, s.bs_position, target_pos, max_reflections))
    {
        PartialPath pp;
        pp.interactions = std::move(p.interactions);
        pp.total_length_m = p.total_length_m;
        pp.delay_s = p.delay_s;
        pp.beta1 = p.complex_gain;
        pp.aod_az_rad = p.aod_az_rad;
        pp.aod_el_rad = p.aod_el_rad;
        out.push_back(std::move(pp));
    }
    return out;
}

double target_scatter_amplitude(double rcs_m2, double wavelength_m)
{
    return std::sqrt(4.0 * kPi * rcs_m2) / wavelength_m;
}

std::vector<PropagationPath> compose_sensing_paths(const std::vector<PartialPath> &partial, const Vec3 &target_pos,
                                                   double rcs_m2, double wavelength_m)
{
    if (!(rcs_m2 > 0.0))
        throw ContractError("compose_sensing_paths: rcs must be positive");
    if (!(wavelength_m > 0.0))
        throw ContractError("compose_sensing_paths: wavelength must be positive");
    const double alpha_target = target_scatter_amplitude(rcs_m2, wavelength_m);
    std::vector<PropagationPath> out;
    out.reserve(partial.size() * partial.size());
    for (const PartialPath &in : partial)
    {
        for (const PartialPath &back : partial)
        {
            PropagationPath p;
            p.interactions = in.interactions;
            p.interactions.push_back({InteractionKind::TargetScatter, std::nullopt, target_pos, alpha_target});
            p.interactions.insert(p.interactions.end(), back.interactions.rbegin(), back.interactions.rend());
            p.total_length_m = in.total_length_m + back.total_length_m;
            p.delay_s = in.delay_s + back.delay_s;
            p.complex_gain = in.beta1 * alpha_target * back.beta1;
            p.aod_az_rad = in.aod_az_rad;
            p.aod_el_rad = in.aod_el_rad;
            p.aoa_az_rad = back.aod_az_rad;
            p.aoa_el_rad = back.aod_el_rad;
            out.push_back(std::move(p));
        }
    }
    return out;
}

std::vector<PropagationPath> compose_sensing_paths(const Scene &s, const Vec3 &target_pos, double rcs_m2,
                                                   int max_reflections)
{
    if (!(rcs_m2 > 0.0))
        throw ContractError("compose_sensing_paths: rcs must be positive");
    return compose_sensing_paths(partial_trace(s, target_pos, max_reflections), target_pos, rcs_m2, s.wavelength());
}

void write_paths_csv(std::ostream &out, const std::vector<PropagationPath> &paths)
{
    constexpr double deg = 180.0 / kPi;
    out << "type,n_reflections,length_m,delay_ns,gain_db,aod_az_deg,aod_el_deg,aoa_az_deg,aoa_el_deg\n";
    for (const auto &p : paths)
    {
        const char *type = p.has_target() ? "backscatter" : (p.n_reflections() == 0 ? "direct" : "reflected");
        out << type << ',' << p.n_reflections() << ',' << format_number(p.total_length_m) << ','
            << format_number(p.delay_s * 1e9) << ',' << format_number(20.0 * std::log10(std::abs(p.complex_gain)))
            << ',' << format_number(p.aod_az_rad * deg) << ',' << format_number(p.aod_el_rad * deg) << ','
            << format_number(p.aoa_az_rad * deg) << ',' << format_number(p.aoa_el_rad * deg) << '\n';
    }
}

} // namespace isac
