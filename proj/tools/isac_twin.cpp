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

#include "isac/beamforming.hpp"
#include "isac/channel.hpp"
#include "isac/csv_io.hpp"
#include "isac/errors.hpp"
#include "isac/raytracer.hpp"
#include "isac/scene.hpp"
#include "isac/sim.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace
{

using namespace isac;

// Runtime failures that map to exit code 2.
struct RuntimeFailure : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

Vec3 parse_point(const std::string &text, const char *flag)
{
    std::stringstream in(text);
    Vec3 p;
    std::string item;
    int n = 0;
    while (std::getline(in, item, ','))
    {
        if (n == 3)
            throw RuntimeFailure(std::string("invalid value for ") + flag + ": expected x,y,z");
        try
        {
            std::size_t used = 0;
            p(n) = std::stod(item, &used);
            if (used != item.size())
                throw std::invalid_argument(item);
        }
        catch (const std::exception &)
        {
            throw RuntimeFailure(std::string("invalid value for ") + flag + ": '" + text + "' is not x,y,z");
        }
        ++n;
    }
    if (n != 3)
        throw RuntimeFailure(std::string("invalid value for ") + flag + ": expected x,y,z");
    return p;
}

Strategy parse_strategy_flag(const std::string &name)
{
    const auto s = parse_strategy(name);
    if (!s)
        throw RuntimeFailure("unknown strategy '" + name +
                             "' (expected full_channel, los_direction, dt_fixed_reflector or dt_dominant_path)");
    return *s;
}

std::ofstream open_output(const std::string &path)
{
    const std::filesystem::path p(path);
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path);
    if (!out)
        throw RuntimeFailure("cannot write '" + path + "'");
    return out;
}

struct LinkFlags
{
    std::string scene;
    std::string target;
    std::string ue;
    std::string strategy = "dt_dominant_path";
    double gamma_db = 10.0;
    double sigma_u2 = ExperimentConfig{}.sigma_u2;
    double sigma_t2 = ExperimentConfig{}.sigma_t2;
    double power = 1.0;
    double rcs = ExperimentConfig{}.rcs_m2;
    int max_reflections = 2;

    void add_to(CLI::App *app)
    {
        app->add_option("--scene", scene, "Scene JSON file")->required();
        app->add_option("--target", target, "Target position x,y,z")->required();
        app->add_option("--ue", ue, "User position x,y,z (default: centre of the user region)");
        app->add_option("--strategy", strategy, "full_channel | los_direction | dt_fixed_reflector | dt_dominant_path")
            ->capture_default_str();
        app->add_option("--gamma-db", gamma_db, "Minimum user SINR in dB")->capture_default_str();
        app->add_option("--sigma-u2", sigma_u2, "User noise power")->capture_default_str();
        app->add_option("--sigma-t2", sigma_t2, "Sensing noise power")->capture_default_str();
        app->add_option("--power", power, "Transmit power budget")->capture_default_str();
        app->add_option("--rcs", rcs, "Target radar cross section in m^2")->capture_default_str();
        app->add_option("--max-reflections", max_reflections, "Reflections per hop (0-2)")->capture_default_str();
    }
};

struct Designed
{
    Strategy strategy;
    BeamSolution beams;
    LinkMetrics metrics;
    double sigma_t2;
};

Designed design(const LinkFlags &f)
{
    const Scene scene = load_scene_file(f.scene);
    const Vec3 target = parse_point(f.target, "--target");
    const Region &ur = scene.ue_region;
    const Vec3 ue = f.ue.empty() ? Vec3(0.5 * (ur.x_min + ur.x_max), 0.5 * (ur.y_min + ur.y_max), ur.z)
                                 : parse_point(f.ue, "--ue");
    const Strategy strategy = parse_strategy_flag(f.strategy);

    BeamInputs in;
    in.h_u = comm_channel(trace_point_to_point(scene, scene.bs_position, ue, f.max_reflections), scene.tx_array);
    in.tx = scene.tx_array;
    in.partial_paths = partial_trace(scene, target, f.max_reflections);
    in.H_t = sensing_channel(compose_sensing_paths(*in.partial_paths, target, f.rcs, scene.wavelength()), scene.tx_array, scene.rx_array);
    in.bs_position = scene.bs_position;
    in.target_position = target;
    if (scene.fixed_reflector_facet)
        in.fixed_reflector = scene.facets.at(*scene.fixed_reflector_facet);

    DesignParams params;
    params.gamma_u = from_db(f.gamma_db);
    params.sigma_u2 = f.sigma_u2;
    params.power_budget = f.power;

    Designed d{strategy, design_beams(strategy, in, params), {}, f.sigma_t2};
    d.metrics = evaluate_link(d.beams.f_u, d.beams.f_t, ChannelSet{in.h_u, *in.H_t}, f.sigma_u2, f.sigma_t2, f.power);
    return d;
}

void print_vector(std::ostream &out, const char *name, const CVector &v)
{
    out << name << ":\n";
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out << "  " << i << ',' << format_number(v(i).real()) << ',' << format_number(v(i).imag()) << '\n';
}

int cmd_scene_validate(const std::string &path)
{
    const Scene s = parse_scene(read_scene_file(path));
    const ValidationReport report = validate_scene(s);
    std::cout << "violations: " << report.size() << '\n';
    for (const Violation &v : report)
        std::cout << "  " << v.where << ": " << v.message << '\n';
    if (!report.empty())
        throw RuntimeFailure("scene '" + path + "' is invalid");
    return 0;
}

int cmd_trace(const std::string &scene_path, const std::string &from, const std::string &to, int max_reflections,
              const std::string &out_path)
{
    const Scene s = load_scene_file(scene_path);
    const auto paths =
        trace_point_to_point(s, parse_point(from, "--from"), parse_point(to, "--to"), max_reflections);
    if (out_path.empty())
        write_paths_csv(std::cout, paths);
    else
    {
        std::ofstream out = open_output(out_path);
        write_paths_csv(out, paths);
    }
    return 0;
}

int cmd_solve(const LinkFlags &f)
{
    const Designed d = design(f);
    const BeamSolution &b = d.beams;
    std::ostream &out = std::cout;
    out << "strategy: " << to_string(d.strategy) << '\n';
    out << "status: " << to_string(b.status) << '\n';
    if (b.steering)
        out << "steering_az_deg: " << format_number(b.steering->az_rad * 180.0 / kPi) << '\n'
            << "steering_el_deg: " << format_number(b.steering->el_rad * 180.0 / kPi) << '\n';
    out << "predicted_snr_db: " << format_number(to_db(b.predicted_objective / d.sigma_t2)) << '\n';
    out << "achieved_snr_db: " << format_number(to_db(d.metrics.snr_t)) << '\n';
    out << "achieved_sinr_db: " << format_number(to_db(d.metrics.sinr_u)) << '\n';
    out << "power: " << format_number(b.f_u.squaredNorm() + b.f_t.squaredNorm()) << '\n';
    out << "rank1_u: " << format_number(b.rank1_ratio_u) << '\n';
    out << "rank1_t: " << format_number(b.rank1_ratio_t) << '\n';
    out << "repaired: " << (b.repaired ? "yes" : "no") << '\n';
    if (b.used_fallback)
        out << "note: no traced path reached the target, steered along the line of sight\n";
    print_vector(out, "f_u", b.f_u);
    print_vector(out, "f_t", b.f_t);
    return 0;
}

int cmd_beampattern(const LinkFlags &f, const std::string &beam, const std::string &out_path)
{
    if (beam != "sensing" && beam != "comm")
        throw RuntimeFailure("invalid value for --beam: '" + beam + "' (expected sensing or comm)");
    const Designed d = design(f);
    const Scene scene = load_scene_file(f.scene);
    std::ofstream out = open_output(out_path);
    write_beam_pattern_csv(out, beam == "sensing" ? d.beams.f_t : d.beams.f_u, scene.tx_array);
    return 0;
}

void print_summary(const Summary &s)
{
    std::cout << "trials: " << s.n_trials << " (los_dominant " << s.trials_per_area[0] << ", nlos_dominant "
              << s.trials_per_area[1] << ")\n";
    std::cout << "all-infeasible trials: " << s.n_infeasible << '\n';
    std::cout << "strategy,area,count,excluded,median_snr_db\n";
    for (std::size_t k = 0; k < kAllStrategies.size(); ++k)
        for (std::size_t a = 0; a < kAllAreas.size(); ++a)
            std::cout << to_string(kAllStrategies[k]) << ',' << to_string(kAllAreas[a]) << ','
                      << s.stats[k][a].count << ',' << s.excluded[k] << ','
                      << format_number(s.stats[k][a].median_snr_db) << '\n';
}

int cmd_montecarlo(const std::string &config, const std::string &out_dir, int threads, std::size_t n_trials)
{
    ExperimentConfig cfg = load_config_file(config);
    if (n_trials > 0)
        cfg.n_trials = n_trials;
    const MonteCarloResult r = run_montecarlo(cfg, threads);
    write_outputs(out_dir, r);
    print_summary(r.summary);
    return 0;
}

int cmd_cdf(const std::string &trials_path, const std::string &out_dir, double gamma_db, double power)
{
    std::ifstream in(trials_path);
    if (!in)
        throw RuntimeFailure("cannot open trials file '" + trials_path + "'");
    ExperimentConfig cfg;
    cfg.gamma_u_db = gamma_db;
    cfg.power_budget = power;
    const Summary s = summarize(read_trials_csv(in), cfg);
    const std::string dir =
        out_dir.empty() ? std::filesystem::path(trials_path).parent_path().string() : out_dir;
    write_cdf_outputs(dir.empty() ? "." : dir, s);
    print_summary(s);
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"isac_twin: joint communication and sensing beam design over a ray-traced digital twin"};
    app.require_subcommand(1);

    std::string scene_path;
    auto *validate = app.add_subcommand("scene-validate", "Check a scene file and list violations");
    validate->add_option("--scene", scene_path, "Scene JSON file")->required();

    std::string from, to, trace_out;
    int trace_reflections = 2;
    auto *trace = app.add_subcommand("trace", "Dump traced paths between two points as CSV");
    trace->add_option("--scene", scene_path, "Scene JSON file")->required();
    trace->add_option("--from", from, "Transmit point x,y,z")->required();
    trace->add_option("--to", to, "Receive point x,y,z")->required();
    trace->add_option("--max-reflections", trace_reflections, "Reflections (0-2)")->capture_default_str();
    trace->add_option("--out", trace_out, "Output CSV (default: stdout)");

    LinkFlags solve_flags;
    auto *solve = app.add_subcommand("solve", "Design beams for one user/target pair");
    solve_flags.add_to(solve);

    LinkFlags pattern_flags;
    std::string beam = "sensing", pattern_out;
    auto *pattern = app.add_subcommand("beampattern", "Write the azimuth pattern of a designed beam");
    pattern_flags.add_to(pattern);
    pattern->add_option("--beam", beam, "sensing | comm")->capture_default_str();
    pattern->add_option("--out", pattern_out, "Output CSV")->required();

    std::string config, mc_out;
    int threads = 0;
    std::size_t n_trials = 0;
    auto *mc = app.add_subcommand("montecarlo", "Run the Monte Carlo experiment");
    mc->add_option("--config", config, "Experiment config JSON")->required();
    mc->add_option("--out", mc_out, "Output directory")->required();
    mc->add_option("--threads", threads, "Worker threads (default: all, capped by ISAC_TWIN_THREADS)");
    mc->add_option("--trials", n_trials, "Override n_trials from the config");

    std::string trials_path, cdf_out;
    double cdf_gamma_db = 10.0, cdf_power = 1.0;
    auto *cdf = app.add_subcommand("cdf", "Recompute CDFs and medians from a trials CSV");
    cdf->add_option("--trials", trials_path, "trials.csv from a montecarlo run")->required();
    cdf->add_option("--out", cdf_out, "Output directory (default: next to the trials file)");
    cdf->add_option("--gamma-db", cdf_gamma_db, "SINR target used for the violation count")->capture_default_str();
    cdf->add_option("--power", cdf_power, "Power budget")->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::Success &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return 1;
    }

    try
    {
        if (*validate)
            return cmd_scene_validate(scene_path);
        if (*trace)
            return cmd_trace(scene_path, from, to, trace_reflections, trace_out);
        if (*solve)
            return cmd_solve(solve_flags);
        if (*pattern)
            return cmd_beampattern(pattern_flags, beam, pattern_out);
        if (*mc)
            return cmd_montecarlo(config, mc_out, threads, n_trials);
        if (*cdf)
            return cmd_cdf(trials_path, cdf_out, cdf_gamma_db, cdf_power);
    }
    catch (const isac::InfeasibleError &e)
    {
        std::cerr << "error: infeasible: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
