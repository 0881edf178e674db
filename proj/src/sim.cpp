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

#include "isac/sim.hpp"

#include "isac/channel.hpp"
#include "isac/csv_io.hpp"
#include "isac/errors.hpp"

#include <json.hpp>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>

namespace isac
{

using nlohmann::json;

const char *to_string(AreaLabel a)
{
    return a == AreaLabel::LosDominant ? "los_dominant" : "nlos_dominant";
}

std::optional<AreaLabel> parse_area(const std::string &s)
{
    if (s == "los_dominant")
        return AreaLabel::LosDominant;
    if (s == "nlos_dominant")
        return AreaLabel::NlosDominant;
    return std::nullopt;
}

const char *to_string(TrialStatus s)
{
    switch (s)
    {
    case TrialStatus::Optimal:
        return "optimal";
    case TrialStatus::MaxIter:
        return "max_iter";
    case TrialStatus::Infeasible:
        return "infeasible";
    case TrialStatus::Error:
        return "error";
    }
    return "error";
}

namespace
{

// stream domains for target positions and trials
constexpr std::uint64_t kTargetStream = 1;
constexpr std::uint64_t kTrialStream = 2;

std::optional<TrialStatus> parse_status(const std::string &s)
{
    for (TrialStatus t : {TrialStatus::Optimal, TrialStatus::MaxIter, TrialStatus::Infeasible, TrialStatus::Error})
        if (s == to_string(t))
            return t;
    return std::nullopt;
}

std::size_t area_index(AreaLabel a) { return a == AreaLabel::LosDominant ? 0 : 1; }

double uniform01(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t uniform_index(std::mt19937_64 &rng, std::size_t n)
{
    return std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)));
}

int resolve_threads(int threads) { return threads > 0 ? threads : worker_count(); }

// Runs body(i) for i in [0, n) on `threads` OpenMP workers; the first exception is rethrown.
template <typename Body>
void parallel_for(std::size_t n, int threads, Body &&body)
{
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
    for (std::int64_t i = 0; i < count; ++i)
    {
        try
        {
            body(static_cast<std::size_t>(i));
        }
        catch (...)
        {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
}

double number_field(const json &j, const char *key, double fallback)
{
    if (!j.contains(key))
        return fallback;
    if (!j.at(key).is_number())
        throw ContractError(std::string("config field '") + key + "' must be a number");
    return j.at(key).get<double>();
}

std::uint64_t count_field(const json &j, const char *key, std::uint64_t fallback)
{
    if (!j.contains(key))
        return fallback;
    const json &v = j.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
        throw ContractError(std::string("config field '") + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
}

UserSample make_user(const Scene &s, const Vec3 &p, int max_reflections)
{
    UserSample u;
    u.position = p;
    u.h_u = comm_channel(trace_point_to_point(s, s.bs_position, p, max_reflections), s.tx_array);
    return u;
}

Vec3 target_position(const Scene &s, std::uint64_t seed, std::size_t index)
{
    std::mt19937_64 rng(stream_seed(stream_seed(seed, kTargetStream), index));
    const Region &r = s.target_region;
    const double x = r.x_min + uniform01(rng) * (r.x_max - r.x_min);
    const double y = r.y_min + uniform01(rng) * (r.y_max - r.y_min);
    return {x, y, r.z};
}

TargetSample make_target(const Scene &s, const Vec3 &p, double rcs_m2, int max_reflections)
{
    TargetSample t;
    t.position = p;
    t.partial_paths = partial_trace(s, p, max_reflections);
    t.H_t = sensing_channel(compose_sensing_paths(t.partial_paths, p, rcs_m2, s.wavelength()), s.tx_array, s.rx_array);
    t.los = los_direction(s.bs_position, p);
    if (!t.partial_paths.empty())
        t.dominant = dominant_partial_direction(t.partial_paths);
    t.area = classify_area(t.partial_paths);
    return t;
}

} // namespace

double ExperimentConfig::gamma_u() const { return from_db(gamma_u_db); }

ExperimentConfig parse_config(const std::string &document, const std::string &base_dir)
{
    json j;
    try
    {
        j = json::parse(document);
    }
    catch (const json::parse_error &e)
    {
        throw ContractError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object())
        throw ContractError("config must be a JSON object");
    static const char *known[] = {"scene",        "n_trials",        "gamma_u_db",          "sigma_u2",
                                  "sigma_t2",     "power_budget",    "rcs_m2",              "max_reflections",
                                  "master_seed",  "user_grid_spacing_m", "n_target_positions", "comment"};
    for (const auto &item : j.items())
        if (std::find_if(std::begin(known), std::end(known), [&](const char *k) { return item.key() == k; }) ==
            std::end(known))
            throw ContractError("unknown config field '" + item.key() + "'");

    ExperimentConfig cfg;
    if (!j.contains("scene") || !j.at("scene").is_string())
        throw ContractError("config field 'scene' (path) is required");
    std::filesystem::path scene = j.at("scene").get<std::string>();
    if (scene.is_relative() && !base_dir.empty())
        scene = std::filesystem::path(base_dir) / scene;
    cfg.scene_path = scene.lexically_normal().string();
    cfg.n_trials = count_field(j, "n_trials", cfg.n_trials);
    cfg.gamma_u_db = number_field(j, "gamma_u_db", cfg.gamma_u_db);
    cfg.sigma_u2 = number_field(j, "sigma_u2", cfg.sigma_u2);
    cfg.sigma_t2 = number_field(j, "sigma_t2", cfg.sigma_t2);
    cfg.power_budget = number_field(j, "power_budget", cfg.power_budget);
    cfg.rcs_m2 = number_field(j, "rcs_m2", cfg.rcs_m2);
    cfg.max_reflections = static_cast<int>(count_field(j, "max_reflections", 2));
    cfg.master_seed = count_field(j, "master_seed", cfg.master_seed);
    cfg.user_grid_spacing_m = number_field(j, "user_grid_spacing_m", cfg.user_grid_spacing_m);
    cfg.n_target_positions = count_field(j, "n_target_positions", cfg.n_target_positions);
    check_config(cfg);
    return cfg;
}

ExperimentConfig load_config_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ContractError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), std::filesystem::path(path).parent_path().string());
}

void check_config(const ExperimentConfig &cfg)
{
    if (cfg.n_trials == 0)
        throw ContractError("config: n_trials must be positive");
    if (cfg.n_target_positions == 0)
        throw ContractError("config: n_target_positions must be positive");
    if (!(cfg.sigma_u2 > 0.0) || !(cfg.sigma_t2 > 0.0))
        throw ContractError("config: noise powers must be positive");
    if (!(cfg.power_budget > 0.0))
        throw ContractError("config: power_budget must be positive");
    if (!(cfg.rcs_m2 > 0.0))
        throw ContractError("config: rcs_m2 must be positive");
    if (!(cfg.user_grid_spacing_m > 0.0))
        throw ContractError("config: user_grid_spacing_m must be positive");
    if (cfg.max_reflections < 0 || cfg.max_reflections > 2)
        throw ContractError("config: max_reflections must be in [0, 2]");
    if (!std::isfinite(cfg.gamma_u_db))
        throw ContractError("config: gamma_u_db must be finite");
}

AreaLabel classify_area(const std::vector<PartialPath> &paths)
{
    if (paths.empty())
        return AreaLabel::LosDominant;
    const DominantPath d = dominant_partial_direction(paths);
    return paths[d.index].n_reflections() > 0 ? AreaLabel::NlosDominant : AreaLabel::LosDominant;
}

std::vector<Vec3> user_grid(const Region &r, double spacing_m)
{
    if (!(spacing_m > 0.0))
        throw ContractError("user_grid: spacing must be positive");
    if (r.x_max < r.x_min || r.y_max < r.y_min)
        throw ContractError("user_grid: empty region");
    const auto nx = static_cast<std::size_t>(std::floor((r.x_max - r.x_min) / spacing_m + 1e-9)) + 1;
    const auto ny = static_cast<std::size_t>(std::floor((r.y_max - r.y_min) / spacing_m + 1e-9)) + 1;
    std::vector<Vec3> out;
    out.reserve(nx * ny);
    for (std::size_t iy = 0; iy < ny; ++iy)
        for (std::size_t ix = 0; ix < nx; ++ix)
            out.emplace_back(r.x_min + spacing_m * static_cast<double>(ix),
                             r.y_min + spacing_m * static_cast<double>(iy), r.z);
    return out;
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index)
{
    // splitmix64 finalizer over a combination of both inputs
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(seed) ^ (index * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL));
}

int worker_count()
{
    int n = omp_get_max_threads();
    if (const char *env = std::getenv("ISAC_TWIN_THREADS"))
    {
        char *end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap > 0)
            n = std::min<int>(n, static_cast<int>(cap));
    }
    return std::max(n, 1);
}

std::vector<UserSample> generate_user_set(const Scene &s, double spacing_m, int max_reflections, int threads)
{
    const std::vector<Vec3> grid = user_grid(s.ue_region, spacing_m);
    std::vector<UserSample> out(grid.size());
    parallel_for(grid.size(), resolve_threads(threads),
                 [&](std::size_t i) { out[i] = make_user(s, grid[i], max_reflections); });
    return out;
}

std::vector<UserSample> generate_user_set_serial(const Scene &s, double spacing_m, int max_reflections)
{
    std::vector<UserSample> out;
    for (const Vec3 &p : user_grid(s.ue_region, spacing_m))
        out.push_back(make_user(s, p, max_reflections));
    return out;
}

std::vector<TargetSample> generate_target_set(const Scene &s, std::size_t n, std::uint64_t seed, double rcs_m2,
                                              int max_reflections, int threads)
{
    std::vector<TargetSample> out(n);
    parallel_for(n, resolve_threads(threads), [&](std::size_t i) {
        out[i] = make_target(s, target_position(s, seed, i), rcs_m2, max_reflections);
    });
    return out;
}

std::vector<TargetSample> generate_target_set_serial(const Scene &s, std::size_t n, std::uint64_t seed,
                                                     double rcs_m2, int max_reflections)
{
    std::vector<TargetSample> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(make_target(s, target_position(s, seed, i), rcs_m2, max_reflections));
    return out;
}

TrialRecord run_trial(const Scene &s, const std::vector<UserSample> &users, const std::vector<TargetSample> &targets,
                      const ExperimentConfig &cfg, std::size_t trial_id)
{
    if (users.empty() || targets.empty())
        throw ContractError("run_trial: empty user or target set");
    std::mt19937_64 rng(stream_seed(stream_seed(cfg.master_seed, kTrialStream), trial_id));
    TrialRecord rec;
    rec.trial_id = trial_id;
    rec.user_index = uniform_index(rng, users.size());
    rec.target_index = uniform_index(rng, targets.size());
    const UserSample &user = users[rec.user_index];
    const TargetSample &target = targets[rec.target_index];
    rec.ue_position = user.position;
    rec.target_position = target.position;
    rec.area = target.area;

    BeamInputs in;
    in.h_u = user.h_u;
    in.tx = s.tx_array;
    in.H_t = target.H_t;
    in.bs_position = s.bs_position;
    in.target_position = target.position;
    if (s.fixed_reflector_facet)
        in.fixed_reflector = s.facets.at(*s.fixed_reflector_facet);
    in.partial_paths = target.partial_paths;

    DesignParams params;
    params.gamma_u = cfg.gamma_u();
    params.sigma_u2 = cfg.sigma_u2;
    params.power_budget = cfg.power_budget;

    const ChannelSet cs{user.h_u, target.H_t};
    for (std::size_t k = 0; k < kAllStrategies.size(); ++k)
    {
        StrategyOutcome &o = rec.outcomes[k];
        try
        {
            const BeamSolution b = design_beams(kAllStrategies[k], in, params);
            o.power = b.f_u.squaredNorm() + b.f_t.squaredNorm();
            o.rank1_u = b.rank1_ratio_u;
            o.rank1_t = b.rank1_ratio_t;
            o.repaired = b.repaired;
            const LinkMetrics m = evaluate_link(b.f_u, b.f_t, cs, cfg.sigma_u2, cfg.sigma_t2, cfg.power_budget);
            o.sinr = m.sinr_u;
            o.snr = m.snr_t;
            o.status = b.status == SdpStatus::Optimal ? TrialStatus::Optimal : TrialStatus::MaxIter;
        }
        catch (const InfeasibleError &)
        {
            o.status = TrialStatus::Infeasible;
        }
        catch (const std::exception &)
        {
            o.status = TrialStatus::Error;
        }
    }
    return rec;
}

std::vector<TrialRecord> run_trials(const Scene &s, const std::vector<UserSample> &users,
                                    const std::vector<TargetSample> &targets, const ExperimentConfig &cfg, int threads)
{
    std::vector<TrialRecord> out(cfg.n_trials);
    parallel_for(cfg.n_trials, resolve_threads(threads),
                 [&](std::size_t i) { out[i] = run_trial(s, users, targets, cfg, i); });
    return out;
}

std::vector<TrialRecord> run_trials_serial(const Scene &s, const std::vector<UserSample> &users,
                                           const std::vector<TargetSample> &targets, const ExperimentConfig &cfg)
{
    std::vector<TrialRecord> out;
    out.reserve(cfg.n_trials);
    for (std::size_t i = 0; i < cfg.n_trials; ++i)
        out.push_back(run_trial(s, users, targets, cfg, i));
    return out;
}

CdfCurve empirical_cdf(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    CdfCurve c;
    c.cdf.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        c.cdf.push_back(static_cast<double>(i + 1) / static_cast<double>(values.size()));
    c.values = std::move(values);
    return c;
}

double median(std::vector<double> values)
{
    if (values.empty())
        return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

Summary summarize(const std::vector<TrialRecord> &trials, const ExperimentConfig &cfg,
                  const std::vector<TargetSample> *targets)
{
    Summary s;
    s.n_trials = trials.size();
    std::array<std::array<std::vector<double>, 2>, 4> snr_db;
    const double gamma = cfg.gamma_u();
    for (const TrialRecord &t : trials)
    {
        const std::size_t a = area_index(t.area);
        ++s.trials_per_area[a];
        bool any_feasible = false;
        for (std::size_t k = 0; k < 4; ++k)
        {
            const StrategyOutcome &o = t.outcomes[k];
            if (!o.feasible())
            {
                ++s.excluded[k];
                continue;
            }
            any_feasible = true;
            if (o.sinr < gamma - 1e-6)
                ++s.sinr_violations;
            if (o.power > cfg.power_budget + 1e-9)
                ++s.power_violations;
            snr_db[k][a].push_back(to_db(o.snr));
        }
        if (!any_feasible)
            ++s.n_infeasible;
    }
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t a = 0; a < 2; ++a)
        {
            AreaStats &st = s.stats[k][a];
            st.count = snr_db[k][a].size();
            st.median_snr_db = median(snr_db[k][a]);
            st.cdf = empirical_cdf(snr_db[k][a]);
        }
    if (targets)
    {
        std::array<double, 2> sum{};
        for (const TargetSample &t : *targets)
        {
            const std::size_t a = area_index(t.area);
            ++s.targets_per_area[a];
            sum[a] += t.H_t.squaredNorm();
        }
        for (std::size_t a = 0; a < 2; ++a)
            s.mean_channel_power_db[a] =
                s.targets_per_area[a] ? to_db(sum[a] / static_cast<double>(s.targets_per_area[a]))
                                      : std::numeric_limits<double>::quiet_NaN();
    }
    return s;
}

namespace
{

MonteCarloResult run_montecarlo_impl(const ExperimentConfig &cfg, int threads, bool serial)
{
    check_config(cfg);
    const Scene scene = load_scene_file(cfg.scene_path);
    MonteCarloResult r;
    std::vector<UserSample> users;
    std::vector<TargetSample> targets;
    if (serial)
    {
        users = generate_user_set_serial(scene, cfg.user_grid_spacing_m, cfg.max_reflections);
        targets = generate_target_set_serial(scene, cfg.n_target_positions, cfg.master_seed, cfg.rcs_m2,
                                             cfg.max_reflections);
        r.trials = run_trials_serial(scene, users, targets, cfg);
    }
    else
    {
        users = generate_user_set(scene, cfg.user_grid_spacing_m, cfg.max_reflections, threads);
        targets = generate_target_set(scene, cfg.n_target_positions, cfg.master_seed, cfg.rcs_m2,
                                      cfg.max_reflections, threads);
        r.trials = run_trials(scene, users, targets, cfg, threads);
    }
    r.summary = summarize(r.trials, cfg, &targets);
    return r;
}

} // namespace

MonteCarloResult run_montecarlo(const ExperimentConfig &cfg, int threads)
{
    return run_montecarlo_impl(cfg, threads, false);
}

MonteCarloResult run_montecarlo_serial(const ExperimentConfig &cfg) { return run_montecarlo_impl(cfg, 1, true); }

void write_trials_csv(std::ostream &out, const std::vector<TrialRecord> &trials)
{
    out << "trial_id,ue_x,ue_y,ue_z,tgt_x,tgt_y,tgt_z,area_label";
    for (Strategy s : kAllStrategies)
    {
        const std::string p = to_string(s);
        out << ',' << p << "_sinr_db," << p << "_snr_db," << p << "_status," << p << "_rank1_u," << p
            << "_rank1_t," << p << "_repaired";
    }
    out << '\n';
    for (const TrialRecord &t : trials)
    {
        out << t.trial_id;
        for (int i = 0; i < 3; ++i)
            out << ',' << format_number(t.ue_position(i));
        for (int i = 0; i < 3; ++i)
            out << ',' << format_number(t.target_position(i));
        out << ',' << to_string(t.area);
        for (const StrategyOutcome &o : t.outcomes)
        {
            const bool f = o.feasible();
            const double nan = std::numeric_limits<double>::quiet_NaN();
            out << ',' << format_number(f ? to_db(o.sinr) : nan) << ',' << format_number(f ? to_db(o.snr) : nan)
                << ',' << to_string(o.status) << ',' << format_number(f ? o.rank1_u : nan) << ','
                << format_number(f ? o.rank1_t : nan) << ',' << (o.repaired ? 1 : 0);
        }
        out << '\n';
    }
}

std::vector<TrialRecord> read_trials_csv(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line))
        throw ContractError("trials CSV is empty");
    const std::vector<std::string> header = split_csv_line(line);
    constexpr std::size_t kColumns = 8 + 6 * 4;
    if (header.size() != kColumns || header[0] != "trial_id" || header[7] != "area_label")
        throw ContractError("trials CSV has an unexpected header");

    auto to_double = [](const std::string &s) {
        if (s == "nan")
            return std::numeric_limits<double>::quiet_NaN();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
        if (s == "inf")
            return std::numeric_limits<double>::infinity();
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size())
            throw ContractError("trials CSV: bad number '" + s + "'");
        return v;
    };

    std::vector<TrialRecord> out;
    std::size_t line_no = 1;
    while (std::getline(in, line))
    {
        ++line_no;
        if (line.empty())
            continue;
        const std::vector<std::string> f = split_csv_line(line);
        if (f.size() != kColumns)
            throw ContractError("trials CSV line " + std::to_string(line_no) + ": expected " +
                                std::to_string(kColumns) + " fields");
        try
        {
            TrialRecord t;
            t.trial_id = static_cast<std::size_t>(std::stoull(f[0]));
            t.ue_position = {to_double(f[1]), to_double(f[2]), to_double(f[3])};
            t.target_position = {to_double(f[4]), to_double(f[5]), to_double(f[6])};
            const auto area = parse_area(f[7]);
            if (!area)
                throw ContractError("unknown area label '" + f[7] + "'");
            t.area = *area;
            for (std::size_t k = 0; k < 4; ++k)
            {
                const std::size_t c = 8 + 6 * k;
                StrategyOutcome &o = t.outcomes[k];
                const auto status = parse_status(f[c + 2]);
                if (!status)
                    throw ContractError("unknown status '" + f[c + 2] + "'");
                o.status = *status;
                o.sinr = from_db(to_double(f[c]));
                o.snr = from_db(to_double(f[c + 1]));
                o.rank1_u = to_double(f[c + 3]);
                o.rank1_t = to_double(f[c + 4]);
                o.repaired = f[c + 5] == "1";
            }
            out.push_back(t);
        }
        catch (const std::invalid_argument &e)
        {
            throw ContractError("trials CSV line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

void write_cdf_csv(std::ostream &out, const CdfCurve &cdf)
{
    out << "snr_db,cdf\n";
    for (std::size_t i = 0; i < cdf.values.size(); ++i)
        out << format_number(cdf.values[i]) << ',' << format_number(cdf.cdf[i]) << '\n';
}

std::string summary_json(const Summary &s)
{
    auto num = [](double v) -> json {
        if (!std::isfinite(v))
            return format_number(v);
        return std::stod(format_number(v));
    };
    json j;
    j["n_trials"] = s.n_trials;
    j["n_infeasible_trials"] = s.n_infeasible;
    j["sinr_violations"] = s.sinr_violations;
    j["power_violations"] = s.power_violations;
    for (std::size_t a = 0; a < 2; ++a)
    {
        const char *area = to_string(kAllAreas[a]);
        j["areas"][area]["trials"] = s.trials_per_area[a];
        j["areas"][area]["targets"] = s.targets_per_area[a];
        j["areas"][area]["mean_channel_power_db"] = num(s.mean_channel_power_db[a]);
    }
    for (std::size_t k = 0; k < 4; ++k)
    {
        const char *name = to_string(kAllStrategies[k]);
        j["strategies"][name]["excluded"] = s.excluded[k];
        for (std::size_t a = 0; a < 2; ++a)
        {
            const char *area = to_string(kAllAreas[a]);
            j["strategies"][name][area]["count"] = s.stats[k][a].count;
            j["strategies"][name][area]["median_snr_db"] = num(s.stats[k][a].median_snr_db);
        }
    }
    return j.dump(2) + "\n";
}

void write_cdf_outputs(const std::string &dir, const Summary &s)
{
    std::filesystem::create_directories(dir);
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t a = 0; a < 2; ++a)
        {
            const auto path = std::filesystem::path(dir) / (std::string("cdf_") + to_string(kAllStrategies[k]) + "_" +
                                                            to_string(kAllAreas[a]) + ".csv");
            std::ofstream out(path);
            if (!out)
                throw std::runtime_error("cannot write " + path.string());
            write_cdf_csv(out, s.stats[k][a].cdf);
        }
}

void write_outputs(const std::string &dir, const MonteCarloResult &r)
{
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(std::filesystem::path(dir) / "trials.csv");
        if (!out)
            throw std::runtime_error("cannot write trials.csv in " + dir);
        write_trials_csv(out, r.trials);
    }
    write_cdf_outputs(dir, r.summary);
    std::ofstream out(std::filesystem::path(dir) / "summary.json");
    if (!out)
        throw std::runtime_error("cannot write summary.json in " + dir);
    out << summary_json(r.summary);
}

} // namespace isac
