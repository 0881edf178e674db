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

// Serial references against the OpenMP kernels.
// Thread count follows ISAC_TWIN_THREADS / OMP_NUM_THREADS.

#include "isac/sim.hpp"

#include <benchmark/benchmark.h>

using namespace isac;

namespace
{

struct Fixture
{
    Scene scene;
    ExperimentConfig cfg;
    std::vector<UserSample> users;
    std::vector<TargetSample> targets;
};

const Fixture &fixture()
{
    static const Fixture f = [] {
        Fixture x;
        x.cfg = load_config_file(std::string(ISAC_SOURCE_DIR) + "/configs/desk.json");
        x.cfg.n_trials = 32;
        x.cfg.n_target_positions = 32;
        x.cfg.user_grid_spacing_m = 4.0;
        x.scene = load_scene_file(x.cfg.scene_path);
        x.users = generate_user_set_serial(x.scene, x.cfg.user_grid_spacing_m);
        x.targets = generate_target_set_serial(x.scene, x.cfg.n_target_positions, x.cfg.master_seed, x.cfg.rcs_m2);
        return x;
    }();
    return f;
}

void BM_UserSetSerial(benchmark::State &state)
{
    const Fixture &f = fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_user_set_serial(f.scene, f.cfg.user_grid_spacing_m));
}

void BM_UserSetParallel(benchmark::State &state)
{
    const Fixture &f = fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_user_set(f.scene, f.cfg.user_grid_spacing_m));
}

void BM_TargetSetSerial(benchmark::State &state)
{
    const Fixture &f = fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            generate_target_set_serial(f.scene, f.cfg.n_target_positions, f.cfg.master_seed, f.cfg.rcs_m2));
}

void BM_TargetSetParallel(benchmark::State &state)
{
    const Fixture &f = fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            generate_target_set(f.scene, f.cfg.n_target_positions, f.cfg.master_seed, f.cfg.rcs_m2));
}

void BM_TrialsSerial(benchmark::State &state)
{
    const Fixture &f = fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(run_trials_serial(f.scene, f.users, f.targets, f.cfg));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.cfg.n_trials));
}

void BM_TrialsParallel(benchmark::State &state)
{
    const Fixture &f = fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(run_trials(f.scene, f.users, f.targets, f.cfg));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.cfg.n_trials));
}

} // namespace

BENCHMARK(BM_UserSetSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UserSetParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TargetSetSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TargetSetParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialsParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
