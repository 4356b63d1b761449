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
#include <optional>
#include <string_view>

namespace radiomap
{
    struct Vec3
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;

        bool operator==(const Vec3 &) const = default;
    };

    struct PlanarPoint
    {
        double x = 0.0;
        double y = 0.0;
    };
}

namespace radiomap::geoscene
{
    enum class MapStyle
    {
        OpenSpace,    // one large open square plus scattered blocks
        DenseClusters // tightly packed rectangular blocks
    };

    std::string_view to_string(MapStyle style);
    MapStyle map_style_from_string(std::string_view name);

    // Rasterized 2.5D building map. Heights are uniform in [6, 30] m; streets between blocks
    // are 1 to 4 cells wide. Identical (spec, style, seed) give identical maps.
    MetricMap generate_synthetic_map(const GridSpec &spec, MapStyle style, std::uint64_t seed);

    struct SceneOptions
    {
        double ue_height_m = 1.5;
        double bs_clearance_m = 5.0;
    };

    struct Scene
    {
        MetricMap building_map;
        CellMask outdoor_mask;
        Vec3 bs_position;
        double ue_height_m = 1.5;
        double bs_clearance_m = 5.0;
        double antenna_azimuth_rad = 0.0; // boresight direction of the directional BS antenna, [0, 2*pi)

        const GridSpec &spec() const { return building_map.spec(); }
        bool is_outdoor(CellIndex c) const { return outdoor_mask.at(c.ix, c.iy) != 0; }
        Vec3 ue_position(CellIndex c) const
        {
            return {spec().center_x(c.ix), spec().center_y(c.iy), ue_height_m};
        }
        std::size_t outdoor_count() const;
    };

    // Height <= ue_height_m counts as open ground.
    CellMask derive_outdoor_mask(const MetricMap &building_map, double ue_height_m = 1.5);

    // Places the BS `bs_clearance_m` above the tallest building. Without bs_xy the BS position is
    // drawn uniformly over the grid extent; the antenna azimuth is always drawn from the seed.
    Scene build_scene(const MetricMap &building_map, std::optional<PlanarPoint> bs_xy, std::uint64_t seed,
                      const SceneOptions &options = {});
}
