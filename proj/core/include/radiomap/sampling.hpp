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

#pragma once

#include "radiomap/grid.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

namespace radiomap::sampling
{
    enum class Strategy
    {
        Random,
        UniformGrid,
        Special // half at the largest path-gain gradients, half random
    };

    std::string_view to_string(Strategy s);
    Strategy strategy_from_string(std::string_view name);

    struct SamplePlan
    {
        Strategy strategy = Strategy::Random;
        int n_points = 200;
        std::uint64_t seed = 0;
    };

    struct Sample
    {
        int ix = 0;
        int iy = 0;
        float ri = 0.0f;
        float cqi = 0.0f;
        float tp_mbps = 0.0f;
    };

    // |d/dx| + |d/dy| with numpy.gradient semantics: central differences inside, first-order
    // one-sided differences on the border, unit spacing. A dimension of length 1 contributes 0.
    Grid<double> gradient_magnitude(const MetricMap &map);

    // Lattice used by UniformGrid sampling: gx * gy == n nodes; node (i, j) nominally sits in
    // cell (floor((i + 0.5) n_x / gx), floor((j + 0.5) n_y / gy)) and is measured at the nearest
    // free outdoor cell.
    struct Lattice
    {
        int gx = 0;
        int gy = 0;
        std::vector<double> xs;          // nominal node x per column, meters (cell centres)
        std::vector<double> ys;          // nominal node y per row, meters
        std::vector<CellIndex> measured; // node (i, j) at index j * gx + i
    };

    // Factor pair of n closest to the grid aspect ratio; throws when no pair with both factors
    // >= 2 exists or when there are fewer outdoor cells than nodes.
    Lattice uniform_lattice(const GridSpec &spec, int n_points, const CellMask &outdoor);

    struct TruthMaps
    {
        const MetricMap &ri;
        const MetricMap &cqi;
        const MetricMap &throughput;
        const MetricMap *path_gain_iso = nullptr; // required for Special
    };

    struct SparseMaps
    {
        MetricMap ri;
        MetricMap cqi;
        MetricMap throughput;
        std::vector<Sample> samples; // row-major order
        std::optional<Lattice> lattice;
    };

    // Co-located sparse RI/CQI/TP maps; unsampled cells hold the sentinel.
    SparseMaps draw_samples(const SamplePlan &plan, const TruthMaps &truth, const CellMask &outdoor);

    // Sparse maps for an explicit cell list.
    SparseMaps sparse_from_cells(const std::vector<CellIndex> &cells, const TruthMaps &truth);

    // ix,iy,ri,cqi,tp_mbps
    void write_samples_csv(const std::vector<Sample> &samples, std::ostream &out);
    std::vector<Sample> read_samples_csv(std::istream &in);
}
