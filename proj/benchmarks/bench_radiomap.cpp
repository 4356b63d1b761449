// SPDX-License-Identifier: Apache-2.0
//
// radiomap: communication-metric maps and sparse map reconstruction
// Copyright (C) 2026 The radiomap authors
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

#include "radiomap/baseline.hpp"
#include "radiomap/hermitian.hpp"
#include "radiomap/linkadapt.hpp"
#include "radiomap/metrics.hpp"
#include "radiomap/raytrace.hpp"
#include "radiomap/sampling.hpp"
#include "radiomap/scene.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace radiomap;

namespace
{
    geoscene::Scene scene_for(int n, geoscene::MapStyle style)
    {
        auto map = geoscene::generate_synthetic_map(GridSpec{n, n, 2.0}, style, 7);
        return geoscene::build_scene(map, std::nullopt, 7);
    }

    std::vector<sampling::Sample> random_samples(const GridSpec &spec, int n)
    {
        std::mt19937 gen(3);
        std::uniform_int_distribution<int> cx(0, spec.n_x - 1), cy(0, spec.n_y - 1);
        std::uniform_real_distribution<float> tp(0.0f, 48.0f);
        std::vector<sampling::Sample> s;
        for (int i = 0; i < n; ++i)
            s.push_back({cx(gen), cy(gen), 1.0f, 1.0f, tp(gen)});
        return s;
    }
}

static void BM_TraceScene(benchmark::State &state)
{
    auto style = state.range(1) ? geoscene::MapStyle::DenseClusters : geoscene::MapStyle::OpenSpace;
    auto scene = scene_for(static_cast<int>(state.range(0)), style);
    raytrace::PropagationConfig cfg;
    for (auto _ : state)
        benchmark::DoNotOptimize(raytrace::trace_scene(scene, cfg, 1));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(scene.outdoor_count()));
}
BENCHMARK(BM_TraceScene)->Args({64, 0})->Args({64, 1})->Args({128, 0})->Args({128, 1})->Unit(benchmark::kMillisecond);

static void BM_EigenTable(benchmark::State &state)
{
    auto scene = scene_for(64, geoscene::MapStyle::OpenSpace);
    auto trace = raytrace::trace_scene(scene, {}, 1);
    linkadapt::LinkOptions options;
    options.subband_size = static_cast<int>(state.range(0));
    options.jobs = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(linkadapt::compute_eigen_table(trace, {}, {}, options));
}
BENCHMARK(BM_EigenTable)->Arg(0)->Arg(27)->Unit(benchmark::kMillisecond);

static void BM_EigendecomposeHermitian(benchmark::State &state)
{
    std::mt19937_64 gen(1);
    std::normal_distribution<double> g;
    CMatrix a(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            a(i, j) = Complex(g(gen), g(gen));
    CMatrix r = a * a.adjoint();
    for (auto _ : state)
        benchmark::DoNotOptimize(linkadapt::eigendecompose_hermitian(r));
}
BENCHMARK(BM_EigendecomposeHermitian);

static void BM_SelectRiCqi(benchmark::State &state)
{
    linkadapt::RadioBudget budget;
    std::vector<double> eig{3e-11, 8e-12, 1e-13, 2e-15};
    for (auto _ : state)
        benchmark::DoNotOptimize(linkadapt::select_ri_cqi(eig, budget));
}
BENCHMARK(BM_SelectRiCqi);

static void BM_KnnRegress(benchmark::State &state)
{
    GridSpec spec{128, 128, 2.0};
    auto samples = random_samples(spec, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(baseline::knn_regress(samples, spec, 5));
}
BENCHMARK(BM_KnnRegress)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_LinearInterpolate(benchmark::State &state)
{
    GridSpec spec{128, 128, 2.0};
    CellMask open(128, 128, 1);
    auto lattice = sampling::uniform_lattice(spec, 200, open);
    std::vector<double> values(200, 12.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(baseline::linear_interpolate(lattice, values, spec));
}
BENCHMARK(BM_LinearInterpolate)->Unit(benchmark::kMillisecond);

static void BM_SpecialSampling(benchmark::State &state)
{
    auto scene = scene_for(128, geoscene::MapStyle::DenseClusters);
    MetricMap pg(scene.spec(), MetricKind::PathGainIso, -90.0f);
    std::mt19937 gen(2);
    std::uniform_real_distribution<float> u(-120.0f, -60.0f);
    for (auto &v : pg.values())
        v = u(gen);
    MetricMap ri(scene.spec(), MetricKind::RI, 1.0f), cqi(scene.spec(), MetricKind::CQI, 5.0f),
        tp(scene.spec(), MetricKind::Throughput, 10.0f);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            sampling::draw_samples({sampling::Strategy::Special, 200, 1}, {ri, cqi, tp, &pg}, scene.outdoor_mask));
}
BENCHMARK(BM_SpecialSampling)->Unit(benchmark::kMillisecond);

static void BM_ErrorStats(benchmark::State &state)
{
    GridSpec spec{128, 128, 2.0};
    MetricMap a(spec, MetricKind::Throughput), b(spec, MetricKind::Throughput);
    std::mt19937 gen(4);
    std::uniform_real_distribution<float> u(0.0f, 48.0f);
    for (std::size_t i = 0; i < spec.cell_count(); ++i)
    {
        a[i] = u(gen);
        b[i] = u(gen);
    }
    CellMask mask(128, 128, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(evalmetrics::error_stats(a, b, mask));
}
BENCHMARK(BM_ErrorStats)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
