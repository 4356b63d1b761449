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

#include "radiomap/scene.hpp"
#include "radiomap/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace radiomap::geoscene
{
    namespace
    {
        constexpr double kMinHeight = 6.0;
        constexpr double kMaxHeight = 30.0;

        struct Span
        {
            int begin;
            int end; // exclusive
        };

        // Alternating building/street runs along one axis.
        std::vector<Span> block_runs(int length, Rng &rng)
        {
            std::vector<Span> runs;
            int pos = rng.between(0, 2);
            while (pos < length)
            {
                int width = rng.between(4, 12);
                runs.push_back({pos, std::min(pos + width, length)});
                pos += width + rng.between(1, 4);
            }
            return runs;
        }

        void fill_blocks(MetricMap &map, Rng &rng, double occupancy, const Span *open_x, const Span *open_y)
        {
            const auto &spec = map.spec();
            auto cols = block_runs(spec.n_x, rng);
            auto rows = block_runs(spec.n_y, rng);
            for (const auto &row : rows)
            {
                for (const auto &col : cols)
                {
                    // draw both values unconditionally so the stream does not depend on the open region
                    bool occupied = rng.chance(occupancy);
                    auto height = static_cast<float>(rng.uniform(kMinHeight, kMaxHeight));
                    if (!occupied)
                        continue;
                    for (int iy = row.begin; iy < row.end; ++iy)
                        for (int ix = col.begin; ix < col.end; ++ix)
                        {
                            bool in_open = open_x && ix >= open_x->begin && ix < open_x->end &&
                                           iy >= open_y->begin && iy < open_y->end;
                            if (!in_open)
                                map.at(ix, iy) = height;
                        }
                }
            }
        }
    }

    std::string_view to_string(MapStyle style)
    {
        return style == MapStyle::OpenSpace ? "open" : "dense";
    }

    MapStyle map_style_from_string(std::string_view name)
    {
        if (name == "open" || name == "open-space" || name == "OpenSpace")
            return MapStyle::OpenSpace;
        if (name == "dense" || name == "dense-clusters" || name == "DenseClusters")
            return MapStyle::DenseClusters;
        throw std::invalid_argument("unknown map style: " + std::string(name));
    }

    MetricMap generate_synthetic_map(const GridSpec &spec, MapStyle style, std::uint64_t seed)
    {
        spec.validate();
        Rng rng(mix_seed(seed, {0x6d6170, static_cast<std::uint64_t>(style)}));
        MetricMap map(spec, MetricKind::BuildingHeight, 0.0f);

        if (style == MapStyle::DenseClusters)
        {
            fill_blocks(map, rng, 0.85, nullptr, nullptr);
            return map;
        }

        // Open rectangle covering at least half of the area, kept free of buildings.
        int open_w = static_cast<int>(std::lround(spec.n_x * rng.uniform(0.6, 0.8)));
        int open_h = std::min(spec.n_y, static_cast<int>(std::ceil(0.5 * spec.cell_count() / open_w)));
        int x0 = rng.between(0, spec.n_x - open_w);
        int y0 = rng.between(0, spec.n_y - open_h);
        Span open_x{x0, x0 + open_w};
        Span open_y{y0, y0 + open_h};
        fill_blocks(map, rng, 0.7, &open_x, &open_y);
        return map;
    }

    std::size_t Scene::outdoor_count() const
    {
        return static_cast<std::size_t>(std::count(outdoor_mask.values().begin(), outdoor_mask.values().end(), 1));
    }

    CellMask derive_outdoor_mask(const MetricMap &building_map, double ue_height_m)
    {
        const auto &spec = building_map.spec();
        CellMask mask(spec.n_x, spec.n_y, 0);
        for (std::size_t i = 0; i < spec.cell_count(); ++i)
            mask[i] = building_map[i] <= ue_height_m ? 1 : 0;
        return mask;
    }

    Scene build_scene(const MetricMap &building_map, std::optional<PlanarPoint> bs_xy, std::uint64_t seed,
                      const SceneOptions &options)
    {
        if (building_map.kind() != MetricKind::BuildingHeight)
            throw std::invalid_argument("build_scene expects a building height map");
        const auto &spec = building_map.spec();
        spec.validate();

        Rng rng(mix_seed(seed, {0x7363656e65}));
        PlanarPoint xy;
        if (bs_xy)
        {
            xy = *bs_xy;
            if (!(xy.x >= 0.0 && xy.x <= spec.extent_x() && xy.y >= 0.0 && xy.y <= spec.extent_y()))
                throw std::out_of_range("BS position (" + std::to_string(xy.x) + ", " + std::to_string(xy.y) +
                                        ") lies outside the grid extent");
        }
        else
        {
            xy.x = rng.uniform(0.0, spec.extent_x());
            xy.y = rng.uniform(0.0, spec.extent_y());
        }
        double azimuth = rng.uniform(0.0, 2.0 * std::numbers::pi);

        float tallest = 0.0f;
        for (float h : building_map.values())
            tallest = std::max(tallest, h);

        Scene scene;
        scene.building_map = building_map;
        scene.outdoor_mask = derive_outdoor_mask(building_map, options.ue_height_m);
        scene.bs_position = {xy.x, xy.y, static_cast<double>(tallest) + options.bs_clearance_m};
        scene.ue_height_m = options.ue_height_m;
        scene.bs_clearance_m = options.bs_clearance_m;
        scene.antenna_azimuth_rad = azimuth;
        return scene;
    }
}
