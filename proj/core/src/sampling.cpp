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

#include "radiomap/sampling.hpp"
#include "radiomap/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>

namespace radiomap::sampling
{
    namespace
    {
        std::vector<std::size_t> outdoor_cells(const CellMask &outdoor)
        {
            std::vector<std::size_t> cells;
            for (std::size_t i = 0; i < outdoor.size(); ++i)
                if (outdoor[i])
                    cells.push_back(i);
            return cells;
        }

        // Moves `count` uniformly chosen elements to the front (partial Fisher-Yates).
        void choose_front(std::vector<std::size_t> &pool, std::size_t count, Rng &rng)
        {
            for (std::size_t i = 0; i < count; ++i)
            {
                auto j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
                std::swap(pool[i], pool[j]);
            }
        }
    }

    std::string_view to_string(Strategy s)
    {
        switch (s)
        {
        case Strategy::Random:
            return "random";
        case Strategy::UniformGrid:
            return "grid";
        case Strategy::Special:
            return "special";
        }
        return "?";
    }

    Strategy strategy_from_string(std::string_view name)
    {
        if (name == "random")
            return Strategy::Random;
        if (name == "grid" || name == "uniform-grid")
            return Strategy::UniformGrid;
        if (name == "special" || name == "gradient")
            return Strategy::Special;
        throw std::invalid_argument("unknown sampling strategy: " + std::string(name));
    }

    Grid<double> gradient_magnitude(const MetricMap &map)
    {
        const int nx = map.spec().n_x, ny = map.spec().n_y;
        auto f = [&](int ix, int iy) { return static_cast<double>(map.at(ix, iy)); };
        auto diff = [](int i, int n, auto &&value)
        {
            if (n < 2)
                return 0.0;
            if (i == 0)
                return value(1) - value(0);
            if (i == n - 1)
                return value(n - 1) - value(n - 2);
            return (value(i + 1) - value(i - 1)) / 2.0;
        };
        Grid<double> out(nx, ny, 0.0);
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix)
            {
                double gx = diff(ix, nx, [&](int k) { return f(k, iy); });
                double gy = diff(iy, ny, [&](int k) { return f(ix, k); });
                out.at(ix, iy) = std::abs(gx) + std::abs(gy);
            }
        return out;
    }

    Lattice uniform_lattice(const GridSpec &spec, int n_points, const CellMask &outdoor)
    {
        int best_gx = 0;
        double best_score = std::numeric_limits<double>::infinity();
        const double aspect = std::log(static_cast<double>(spec.n_x) / spec.n_y);
        for (int gx = 2; gx <= n_points / 2; ++gx)
        {
            if (n_points % gx != 0)
                continue;
            double score = std::abs(std::log(static_cast<double>(gx) / (n_points / gx)) - aspect);
            if (score < best_score)
            {
                best_score = score;
                best_gx = gx;
            }
        }
        if (best_gx == 0)
            throw std::invalid_argument("uniform grid sampling needs n = gx * gy with gx, gy >= 2; got " +
                                        std::to_string(n_points));

        Lattice lattice;
        lattice.gx = best_gx;
        lattice.gy = n_points / best_gx;
        std::vector<int> col_cells(lattice.gx), row_cells(lattice.gy);
        for (int i = 0; i < lattice.gx; ++i)
        {
            col_cells[i] = static_cast<int>(std::floor((i + 0.5) * spec.n_x / lattice.gx));
            lattice.xs.push_back(spec.center_x(col_cells[i]));
        }
        for (int j = 0; j < lattice.gy; ++j)
        {
            row_cells[j] = static_cast<int>(std::floor((j + 0.5) * spec.n_y / lattice.gy));
            lattice.ys.push_back(spec.center_y(row_cells[j]));
        }

        auto candidates = outdoor_cells(outdoor);
        if (candidates.size() < static_cast<std::size_t>(n_points))
            throw std::invalid_argument("not enough outdoor cells for the sampling lattice");
        std::vector<std::uint8_t> taken(spec.cell_count(), 0);
        for (int j = 0; j < lattice.gy; ++j)
            for (int i = 0; i < lattice.gx; ++i)
            {
                const int cx = col_cells[i], cy = row_cells[j];
                std::size_t best = 0;
                long long best_d2 = std::numeric_limits<long long>::max();
                for (auto c : candidates)
                {
                    if (taken[c])
                        continue;
                    auto cell = spec.cell_of(c);
                    long long dx = cell.ix - cx, dy = cell.iy - cy;
                    long long d2 = dx * dx + dy * dy;
                    if (d2 < best_d2)
                    {
                        best_d2 = d2;
                        best = c;
                        if (d2 == 0)
                            break;
                    }
                }
                taken[best] = 1;
                lattice.measured.push_back(spec.cell_of(best));
            }
        return lattice;
    }

    SparseMaps sparse_from_cells(const std::vector<CellIndex> &cells, const TruthMaps &truth)
    {
        const auto &spec = truth.throughput.spec();
        SparseMaps out{MetricMap(spec, MetricKind::RI, kSentinel), MetricMap(spec, MetricKind::CQI, kSentinel),
                       MetricMap(spec, MetricKind::Throughput, kSentinel), {}, std::nullopt};
        out.ri.set_sparse(true);
        out.cqi.set_sparse(true);
        out.throughput.set_sparse(true);

        std::vector<CellIndex> sorted = cells;
        std::sort(sorted.begin(), sorted.end(),
                  [](const CellIndex &a, const CellIndex &b) { return std::tie(a.iy, a.ix) < std::tie(b.iy, b.ix); });
        for (const auto &c : sorted)
        {
            Sample s{c.ix, c.iy, truth.ri.at(c.ix, c.iy), truth.cqi.at(c.ix, c.iy), truth.throughput.at(c.ix, c.iy)};
            out.ri.at(c.ix, c.iy) = s.ri;
            out.cqi.at(c.ix, c.iy) = s.cqi;
            out.throughput.at(c.ix, c.iy) = s.tp_mbps;
            out.samples.push_back(s);
        }
        return out;
    }

    SparseMaps draw_samples(const SamplePlan &plan, const TruthMaps &truth, const CellMask &outdoor)
    {
        const auto &spec = truth.throughput.spec();
        if (!(truth.ri.spec() == spec) || !(truth.cqi.spec() == spec) || outdoor.n_x() != spec.n_x ||
            outdoor.n_y() != spec.n_y)
            throw std::invalid_argument("draw_samples: truth maps and mask must share one grid");
        if (plan.n_points < 1)
            throw std::invalid_argument("draw_samples: n_points must be positive");

        auto pool = outdoor_cells(outdoor);
        const auto n = static_cast<std::size_t>(plan.n_points);
        if (n > pool.size())
            throw std::invalid_argument("draw_samples: " + std::to_string(n) + " points requested but only " +
                                        std::to_string(pool.size()) + " outdoor cells exist");

        std::vector<CellIndex> chosen;
        std::optional<Lattice> lattice;
        switch (plan.strategy)
        {
        case Strategy::Random:
        {
            Rng rng(mix_seed(plan.seed, {0x72616e64}));
            choose_front(pool, n, rng);
            for (std::size_t i = 0; i < n; ++i)
                chosen.push_back(spec.cell_of(pool[i]));
            break;
        }
        case Strategy::UniformGrid:
        {
            lattice = uniform_lattice(spec, plan.n_points, outdoor);
            chosen = lattice->measured;
            break;
        }
        case Strategy::Special:
        {
            if (!truth.path_gain_iso)
                throw std::invalid_argument("special sampling needs the isotropic path gain map");
            if (!(truth.path_gain_iso->spec() == spec))
                throw std::invalid_argument("draw_samples: path gain map must share the grid");
            auto gradient = gradient_magnitude(*truth.path_gain_iso);
            // pool is row-major, so a stable sort breaks gradient ties by row-major order
            std::stable_sort(pool.begin(), pool.end(),
                             [&](std::size_t a, std::size_t b) { return gradient[a] > gradient[b]; });
            const std::size_t deterministic = n / 2;
            for (std::size_t i = 0; i < deterministic; ++i)
                chosen.push_back(spec.cell_of(pool[i]));
            std::vector<std::size_t> rest(pool.begin() + static_cast<std::ptrdiff_t>(deterministic), pool.end());
            std::sort(rest.begin(), rest.end());
            Rng rng(mix_seed(plan.seed, {0x7370656369616c}));
            choose_front(rest, n - deterministic, rng);
            for (std::size_t i = 0; i < n - deterministic; ++i)
                chosen.push_back(spec.cell_of(rest[i]));
            break;
        }
        }

        auto out = sparse_from_cells(chosen, truth);
        out.lattice = std::move(lattice);
        return out;
    }

    void write_samples_csv(const std::vector<Sample> &samples, std::ostream &out)
    {
        out << "ix,iy,ri,cqi,tp_mbps\n";
        char line[128];
        for (const auto &s : samples)
        {
            std::snprintf(line, sizeof(line), "%d,%d,%.9g,%.9g,%.9g\n", s.ix, s.iy, s.ri, s.cqi, s.tp_mbps);
            out << line;
        }
    }

    std::vector<Sample> read_samples_csv(std::istream &in)
    {
        std::vector<Sample> samples;
        std::string line;
        if (!std::getline(in, line) || line.rfind("ix,iy", 0) != 0)
            throw std::runtime_error("sample CSV must start with the header ix,iy,ri,cqi,tp_mbps");
        std::size_t line_no = 1;
        while (std::getline(in, line))
        {
            ++line_no;
            if (line.empty())
                continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream fields(line);
            Sample s;
            if (!(fields >> s.ix >> s.iy >> s.ri >> s.cqi >> s.tp_mbps))
                throw std::runtime_error("malformed sample CSV line " + std::to_string(line_no));
            samples.push_back(s);
        }
        return samples;
    }
}
