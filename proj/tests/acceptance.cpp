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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit when any fails.

#include "isac/beamforming.hpp"
#include "isac/channel.hpp"
#include "isac/numerics.hpp"
#include "isac/raytracer.hpp"
#include "isac/scene.hpp"
#include "isac/sdp.hpp"
#include "isac/sim.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace isac;
namespace fs = std::filesystem;

namespace
{

const std::string kSource = ISAC_SOURCE_DIR;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict
{
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const char *name, const std::function<Verdict()> &body)
{
    Verdict v;
    try
    {
        v = body();
    }
    catch (const std::exception &e)
    {
        v = {false, std::string("exception: ") + e.what()};
    }
    failures += v.pass ? 0 : 1;
    std::printf("%s  %d %s: %s\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char *f, double a, double b = 0, double c = 0, double d = 0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

CVector random_vector(std::mt19937_64 &rng, Eigen::Index n)
{
    std::normal_distribution<double> g(0.0, 1.0);
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = cdouble(g(rng), g(rng));
    return v;
}

CMatrix random_matrix(std::mt19937_64 &rng, Eigen::Index n, Eigen::Index m)
{
    CMatrix M(n, m);
    for (Eigen::Index j = 0; j < m; ++j)
        M.col(j) = random_vector(rng, n);
    return M;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

double angle_between(const Vec3 &a, const Vec3 &b)
{
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

// --- 1 ---------------------------------------------------------------------

Verdict sdp_vs_oracle()
{
    const auto t0 = Clock::now();
    std::mt19937_64 rng(2024);
    int dominated = 0, close = 0;
    const int n_instances = 100;
    double worst_db = 0.0;
    for (int k = 0; k < n_instances; ++k)
    {
        const Eigen::Index n = 2 + k % 3;
        const CVector h = random_vector(rng, n);
        const CMatrix B = random_matrix(rng, n, 1 + static_cast<Eigen::Index>(rng() % n));
        IsacSdpProblem p;
        p.Q_t = B * B.adjoint();
        p.Q_u = h * h.adjoint();
        p.gamma_u = std::uniform_real_distribution<double>(0.5, 20.0)(rng);
        p.sigma_u2 = std::uniform_real_distribution<double>(0.05, 0.9)(rng) * h.squaredNorm() / p.gamma_u;

        const SdpSolution s = solve_isac_sdp(p);
        const OracleResult o = brute_force_oracle(p);
        if (!o.feasible)
            continue;
        if (s.objective >= o.objective - 1e-6 * std::max(1.0, o.objective))
            ++dominated;
        const Rank1Beams r = rank1_and_repair(s.F_u, s.F_t, p.Q_t, h, p.gamma_u, p.sigma_u2, p.power_budget);
        const double achieved = quad_form(p.Q_t, r.f_u) + quad_form(p.Q_t, r.f_t);
        const double gap_db = 10.0 * std::log10(o.objective / achieved);
        worst_db = std::max(worst_db, gap_db);
        if (gap_db <= 0.2)
            ++close;
    }
    const double t = seconds_since(t0);
    const bool pass = dominated == n_instances && close >= 95 && t < 120.0;
    return {pass, fmt("relaxation >= oracle on %.0f/100, achieved within 0.2 dB on %.0f/100 (worst %.3f dB), %.1f s",
                      dominated, close, worst_db, t)};
}

// --- 2, 3, 4, 8, 9 ----------------------------------------------------------

struct DeskRuns
{
    MonteCarloResult first;
    double first_seconds = 0.0;
    int first_threads = 0;
    fs::path dir;
};

DeskRuns desk_run()
{
    DeskRuns d;
    const ExperimentConfig cfg = load_config_file(kSource + "/configs/desk.json");
    d.dir = fs::temp_directory_path() / "isac_twin_acceptance";
    fs::remove_all(d.dir);
    d.first_threads = worker_count();
    const auto t0 = Clock::now();
    d.first = run_montecarlo(cfg, d.first_threads);
    write_outputs((d.dir / "a").string(), d.first);
    d.first_seconds = seconds_since(t0);
    return d;
}

Verdict feasibility(const DeskRuns &d)
{
    const Summary &s = d.first.summary;
    std::size_t feasible = 0;
    for (const TrialRecord &t : d.first.trials)
        for (const StrategyOutcome &o : t.outcomes)
            feasible += o.feasible() ? 1 : 0;
    const bool pass = s.n_trials == 2000 && s.sinr_violations == 0 && s.power_violations == 0 && feasible > 0;
    return {pass, fmt("%.0f feasible outcomes, %.0f SINR violations, %.0f power violations, %.0f infeasible trials",
                      static_cast<double>(feasible), static_cast<double>(s.sinr_violations),
                      static_cast<double>(s.power_violations), static_cast<double>(s.n_infeasible))};
}

double med(const Summary &s, Strategy k, AreaLabel a)
{
    return s.stats[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)].median_snr_db;
}

Verdict ordering(const DeskRuns &d)
{
    const Summary &s = d.first.summary;
    const auto N = AreaLabel::NlosDominant, L = AreaLabel::LosDominant;
    const double fn = med(s, Strategy::FullChannel, N), dn = med(s, Strategy::DtDominantPath, N);
    const double ln = med(s, Strategy::LosDirection, N);
    const double fl = med(s, Strategy::FullChannel, L), dl = med(s, Strategy::DtDominantPath, L);
    const double rl = med(s, Strategy::DtFixedReflector, L);
    const bool pass = fn >= dn && dn >= ln && fl >= dl && dl >= rl && fn - dn <= 3.0 && fl - dl <= 3.0;
    std::string detail = fmt("nlos full %.2f >= dominant %.2f >= los %.2f dB; ", fn, dn, ln);
    detail += fmt("los full %.2f >= dominant %.2f >= fixed %.2f dB", fl, dl, rl);
    return {pass, detail};
}

Verdict gap(const DeskRuns &d)
{
    const Summary &s = d.first.summary;
    const double g = med(s, Strategy::FullChannel, AreaLabel::NlosDominant) -
                     med(s, Strategy::LosDirection, AreaLabel::NlosDominant);
    return {g >= 5.0, fmt("full_channel - los_direction median gap in nlos_dominant = %.2f dB (need >= 5)", g)};
}

Verdict determinism(const DeskRuns &d)
{
    const ExperimentConfig cfg = load_config_file(kSource + "/configs/desk.json");
    const int threads = d.first_threads == 1 ? 3 : 1;
    write_outputs((d.dir / "b").string(), run_montecarlo(cfg, threads));
    std::size_t files = 0, identical = 0;
    for (const auto &e : fs::directory_iterator(d.dir / "a"))
    {
        ++files;
        identical += slurp(e.path()) == slurp(d.dir / "b" / e.path().filename()) ? 1 : 0;
    }
    return {files > 0 && identical == files,
            fmt("threads %.0f vs %.0f: %.0f/%.0f output files byte-identical", d.first_threads, threads,
                static_cast<double>(identical), static_cast<double>(files))};
}

Verdict desk_runtime(const DeskRuns &d)
{
    return {d.first_seconds < 600.0, fmt("2000 trials x 4 strategies, 16x16 arrays, %.0f thread(s): %.1f s",
                                         d.first_threads, d.first_seconds)};
}

// --- 5 ---------------------------------------------------------------------

Verdict null_depth()
{
    const ArrayGeometry g = ArrayGeometry::ula(16, 0.5, Vec3::UnitY());
    const double az_target = 0.0;
    const double az_user = std::asin(0.25); // orthogonal steering vectors for 16 half-wavelength elements

    BeamInputs in;
    in.tx = g;
    in.h_u = 1e-3 * array_response(g, az_user, 0.0).conjugate();
    PropagationPath p;
    p.complex_gain = 1e-6;
    p.aod_az_rad = az_target;
    p.aoa_az_rad = az_target;
    in.H_t = sensing_channel({p}, g, g);
    DesignParams params;
    params.gamma_u = 10.0;
    params.sigma_u2 = 0.3 * in.h_u.squaredNorm() / params.gamma_u;
    const BeamSolution b = design_beams(Strategy::FullChannel, in, params);

    std::vector<double> grid;
    for (int i = -360; i <= 360; ++i)
        grid.push_back(i * 0.5 * kPi / 180.0);
    const auto pattern = beam_pattern(b.f_t, g, grid);
    const double peak = *std::max_element(pattern.begin(), pattern.end());
    const double at_user = beam_pattern(b.f_t, g, {az_user})[0];
    const double depth = 10.0 * std::log10(at_user / peak);
    return {depth <= -30.0, fmt("sensing pattern at user azimuth %.1f dB relative to peak", depth)};
}

// --- 6 ---------------------------------------------------------------------

Verdict ray_geometry()
{
    const auto t0 = Clock::now();
    const Scene s = load_scene_file(kSource + "/scenes/indoor_paper.json");
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> ux(0.5, 29.5), uy(0.5, 39.5), uz(0.2, 2.8);
    std::size_t paths = 0, single = 0, dbl = 0, bad = 0;
    double worst_angle = 0.0, worst_len = 0.0;
    while (paths < 1000)
    {
        const Vec3 tx(ux(rng), uy(rng), uz(rng));
        const Vec3 rx(ux(rng), uy(rng), uz(rng));
        for (const auto &p : trace_point_to_point(s, tx, rx))
        {
            std::vector<Vec3> vertices{tx};
            std::vector<std::size_t> facets;
            for (const auto &i : p.interactions)
                if (i.kind == InteractionKind::Reflection)
                {
                    vertices.push_back(i.point);
                    facets.push_back(*i.facet);
                }
            if (facets.empty())
                continue;
            vertices.push_back(rx);
            Vec3 image = rx;
            for (auto it = facets.rbegin(); it != facets.rend(); ++it)
                image = mirror_point(image, s.facets[*it]);
            const double len_err = std::abs(p.total_length_m - (image - tx).norm());
            worst_len = std::max(worst_len, len_err);
            bool ok = len_err <= 1e-9;
            for (std::size_t k = 0; k < facets.size(); ++k)
            {
                const Vec3 n = s.facets[facets[k]].normal();
                const Vec3 in = vertices[k] - vertices[k + 1];
                const Vec3 out = vertices[k + 2] - vertices[k + 1];
                const double err = std::abs(angle_between(in, n.dot(in) > 0 ? n : Vec3(-n)) -
                                            angle_between(out, n.dot(out) > 0 ? n : Vec3(-n)));
                worst_angle = std::max(worst_angle, err);
                ok = ok && err <= 1e-9;
            }
            bad += ok ? 0 : 1;
            (facets.size() == 1 ? single : dbl) += 1;
            ++paths;
        }
    }

    const Scene fs_scene = load_scene_file(kSource + "/scenes/free_space.json");
    const double lambda = fs_scene.wavelength();
    double worst_friis = 0.0;
    std::uniform_real_distribution<double> uf(-50.0, 50.0);
    for (int i = 0; i < 1000; ++i)
    {
        const Vec3 a(uf(rng), uf(rng), uf(rng)), b(uf(rng), uf(rng), uf(rng));
        const auto direct = trace_point_to_point(fs_scene, a, b);
        const double expected = lambda / (4.0 * kPi * (b - a).norm());
        worst_friis = std::max(worst_friis, std::abs(std::abs(direct.at(0).complex_gain) - expected) / expected);
    }
    const double t = seconds_since(t0);
    const bool pass = bad == 0 && single > 0 && dbl > 0 && worst_friis <= 1e-12 && t < 30.0;
    std::string detail = fmt("%.0f reflected paths (%.0f single, %.0f double), ", static_cast<double>(paths),
                             static_cast<double>(single), static_cast<double>(dbl));
    detail += fmt("worst specular %.1e rad, worst length %.1e m, worst Friis %.1e rel, %.1f s", worst_angle, worst_len,
                  worst_friis, t);
    return {pass, detail};
}

// --- 7 ---------------------------------------------------------------------

Verdict numerics()
{
    std::mt19937_64 rng(707);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i)
    {
        const CMatrix M = random_matrix(rng, 16, 16);
        const CMatrix A = 0.5 * (M + M.adjoint());
        const EigDecomposition e = herm_eig(A);
        const CMatrix R = A * e.eigenvectors - e.eigenvectors * e.eigenvalues.asDiagonal();
        worst = std::max(worst, R.norm() / A.norm());
    }
    return {worst <= 1e-10, fmt("worst ||AV - V diag(w)|| / ||A|| over 1000 matrices = %.2e", worst)};
}

} // namespace

int main()
{
    std::printf("isac-twin acceptance\n");
    report(1, "sdp-vs-oracle", sdp_vs_oracle);
    report(5, "null-depth", null_depth);
    report(6, "ray-geometry", ray_geometry);
    report(7, "hermitian-eig", numerics);

    DeskRuns desk;
    bool desk_ok = true;
    std::string desk_error;
    try
    {
        desk = desk_run();
    }
    catch (const std::exception &e)
    {
        desk_ok = false;
        desk_error = e.what();
    }
    const auto with_desk = [&](Verdict (*f)(const DeskRuns &)) {
        return [&, f]() -> Verdict {
            if (!desk_ok)
                return {false, "desk run failed: " + desk_error};
            return f(desk);
        };
    };
    report(2, "feasibility", with_desk(feasibility));
    report(3, "ordering", with_desk(ordering));
    report(4, "nlos-gap", with_desk(gap));
    report(9, "desk-runtime", with_desk(desk_runtime));
    report(8, "determinism", with_desk(determinism));
    fs::remove_all(desk.dir);

    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
