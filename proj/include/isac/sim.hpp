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

#include "isac/beamforming.hpp"
#include "isac/raytracer.hpp"
#include "isac/scene.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace isac
{

enum class AreaLabel
{
    LosDominant,
    NlosDominant,
};

inline constexpr std::array<AreaLabel, 2> kAllAreas = {AreaLabel::LosDominant, AreaLabel::NlosDominant};

const char *to_string(AreaLabel a);
std::optional<AreaLabel> parse_area(const std::string &s);

struct ExperimentConfig
{
    std::string scene_path;
    std::size_t n_trials = 2000;
    double gamma_u_db = 10.0;
    double sigma_u2 = 1e-9;
    double sigma_t2 = 2.37e-12;
    double power_budget = 1.0;
    double rcs_m2 = 0.7853981633974483; // optical sphere, 1 m diameter
    int max_reflections = 2;
    std::uint64_t master_seed = 1;
    double user_grid_spacing_m = 1.6;
    std::size_t n_target_positions = 200;

    double gamma_u() const;
};

/// Parses the JSON mirror of ExperimentConfig. A relative "scene" path is resolved against base_dir.
ExperimentConfig parse_config(const std::string &document, const std::string &base_dir = "");
ExperimentConfig load_config_file(const std::string &path);

/// Throws ContractError when the configuration cannot be run (e.g. n_trials == 0).
void check_config(const ExperimentConfig &cfg);

struct UserSample
{
    Vec3 position = Vec3::Zero();
    CVector h_u;
};

struct TargetSample
{
    Vec3 position = Vec3::Zero();
    CMatrix H_t;
    std::vector<PartialPath> partial_paths;
    Direction los;
    std::optional<DominantPath> dominant;
    AreaLabel area = AreaLabel::LosDominant;
};

/// nlos_dominant iff the strongest partial path carries a reflection.
AreaLabel classify_area(const std::vector<PartialPath> &paths);

/// Boundary-inclusive grid over the region: floor(L / spacing) + 1 points per axis, x varying fastest.
std::vector<Vec3> user_grid(const Region &r, double spacing_m);

/// Deterministic 64-bit mixing of (seed, index), used for every per-item random stream.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// Number of OpenMP workers: the OpenMP default capped by ISAC_TWIN_THREADS when set.
int worker_count();

// Kernels come in pairs: the OpenMP version (threads <= 0 means worker_count()) and the serial
// reference it must reproduce exactly.

std::vector<UserSample> generate_user_set(const Scene &s, double spacing_m, int max_reflections = 2,
                                          int threads = 0);
std::vector<UserSample> generate_user_set_serial(const Scene &s, double spacing_m, int max_reflections = 2);

std::vector<TargetSample> generate_target_set(const Scene &s, std::size_t n, std::uint64_t seed, double rcs_m2,
                                              int max_reflections = 2, int threads = 0);
std::vector<TargetSample> generate_target_set_serial(const Scene &s, std::size_t n, std::uint64_t seed,
                                                     double rcs_m2, int max_reflections = 2);

enum class TrialStatus
{
    Optimal,
    MaxIter,
    Infeasible,
    Error,
};

const char *to_string(TrialStatus s);

struct StrategyOutcome
{
    TrialStatus status = TrialStatus::Error;
    double sinr = 0.0; // linear, evaluated on the true channels
    double snr = 0.0;  // linear
    double power = 0.0;
    double rank1_u = 0.0;
    double rank1_t = 0.0;
    bool repaired = false;

    bool feasible() const { return status == TrialStatus::Optimal || status == TrialStatus::MaxIter; }
};

struct TrialRecord
{
    std::size_t trial_id = 0;
    std::size_t user_index = 0;
    std::size_t target_index = 0;
    Vec3 ue_position = Vec3::Zero();
    Vec3 target_position = Vec3::Zero();
    AreaLabel area = AreaLabel::LosDominant;
    std::array<StrategyOutcome, 4> outcomes; // indexed like kAllStrategies
};

/// Runs all four strategies for one (user, target) draw and evaluates them on the true channels.
TrialRecord run_trial(const Scene &s, const std::vector<UserSample> &users, const std::vector<TargetSample> &targets,
                      const ExperimentConfig &cfg, std::size_t trial_id);

std::vector<TrialRecord> run_trials(const Scene &s, const std::vector<UserSample> &users,
                                    const std::vector<TargetSample> &targets, const ExperimentConfig &cfg,
                                    int threads = 0);
std::vector<TrialRecord> run_trials_serial(const Scene &s, const std::vector<UserSample> &users,
                                           const std::vector<TargetSample> &targets, const ExperimentConfig &cfg);

struct CdfCurve
{
    std::vector<double> values; // sorted ascending
    std::vector<double> cdf;    // (i + 1) / n
};

CdfCurve empirical_cdf(std::vector<double> values);
double median(std::vector<double> values);

struct AreaStats
{
    std::size_t count = 0;
    double median_snr_db = 0.0;
    CdfCurve cdf;
};

struct Summary
{
    std::size_t n_trials = 0;
    std::size_t n_infeasible = 0;     // trials where every strategy was infeasible
    std::array<std::size_t, 4> excluded{}; // per strategy: infeasible or failed outcomes
    std::array<std::size_t, 2> trials_per_area{};
    std::array<std::array<AreaStats, 2>, 4> stats; // [strategy][area]
    std::size_t sinr_violations = 0;  // feasible outcomes with SINR < gamma - 1e-6
    std::size_t power_violations = 0; // feasible outcomes with power > P + 1e-9
    std::array<double, 2> mean_channel_power_db{}; // mean ||H_t||_F^2 over targets per area
    std::array<std::size_t, 2> targets_per_area{};
};

Summary summarize(const std::vector<TrialRecord> &trials, const ExperimentConfig &cfg,
                  const std::vector<TargetSample> *targets = nullptr);

struct MonteCarloResult
{
    std::vector<TrialRecord> trials;
    Summary summary;
};

MonteCarloResult run_montecarlo(const ExperimentConfig &cfg, int threads = 0);
MonteCarloResult run_montecarlo_serial(const ExperimentConfig &cfg);

void write_trials_csv(std::ostream &out, const std::vector<TrialRecord> &trials);

/// Reads a trials CSV back. Only the CSV columns are restored: SINR/SNR are reconstructed from the
/// 9-digit dB values, power and indices are left at zero.
std::vector<TrialRecord> read_trials_csv(std::istream &in);

void write_cdf_csv(std::ostream &out, const CdfCurve &cdf);
std::string summary_json(const Summary &s);

/// Writes trials.csv, cdf_<strategy>_<area>.csv and summary.json into dir (created if missing).
void write_outputs(const std::string &dir, const MonteCarloResult &r);
void write_cdf_outputs(const std::string &dir, const Summary &s);

} // namespace isac
