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

#include <catch_amalgamated.hpp>

#include "radiomap/scene.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace radiomap;
using namespace radiomap::geoscene;

TEST_CASE("generate_synthetic_map - deterministic per seed")
{
    GridSpec spec{128, 128, 2.0};
    for (auto style : {MapStyle::OpenSpace, MapStyle::DenseClusters})
    {
        auto a = generate_synthetic_map(spec, style, 7);
        auto b = generate_synthetic_map(spec, style, 7);
        auto c = generate_synthetic_map(spec, style, 8);
        CHECK(a == b);
        CHECK_FALSE(a == c);
    }
}

TEST_CASE("generate_synthetic_map - heights and building fraction")
{
    GridSpec spec{128, 128, 2.0};
    double dense_min = 1.0, dense_max = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed)
    {
        for (auto style : {MapStyle::OpenSpace, MapStyle::DenseClusters})
        {
            auto m = generate_synthetic_map(spec, style, seed);
            std::size_t buildings = 0;
            for (float h : m.values())
            {
                REQUIRE(h >= 0.0f);
                if (h > 0.0f)
                {
                    REQUIRE(h >= 6.0f);
                    REQUIRE(h <= 30.0f);
                    ++buildings;
                }
            }
            double fraction = static_cast<double>(buildings) / static_cast<double>(spec.cell_count());
            if (style == MapStyle::DenseClusters)
            {
                dense_min = std::min(dense_min, fraction);
                dense_max = std::max(dense_max, fraction);
            }
            else
            {
                CHECK(fraction <= 0.5);
            }
        }
    }
    CHECK(dense_min >= 0.3);
    CHECK(dense_max <= 0.7);
}

TEST_CASE("generate_synthetic_map - open style keeps a large free rectangle")
{
    GridSpec spec{64, 64, 2.0};
    auto m = generate_synthetic_map(spec, MapStyle::OpenSpace, 3);
    // largest all-free axis-aligned rectangle, brute force over row runs
    std::size_t best = 0;
    for (int y0 = 0; y0 < spec.n_y; ++y0)
    {
        std::vector<int> free_run(static_cast<std::size_t>(spec.n_x), 1);
        for (int y1 = y0; y1 < spec.n_y; ++y1)
        {
            for (int x = 0; x < spec.n_x; ++x)
                free_run[static_cast<std::size_t>(x)] &= m.at(x, y1) == 0.0f ? 1 : 0;
            int run = 0;
            for (int x = 0; x < spec.n_x; ++x)
            {
                run = free_run[static_cast<std::size_t>(x)] ? run + 1 : 0;
                best = std::max(best, static_cast<std::size_t>(run) * static_cast<std::size_t>(y1 - y0 + 1));
            }
        }
    }
    CHECK(best * 2 >= spec.cell_count());
}

TEST_CASE("build_scene - BS height above the tallest structure")
{
    auto flat = radiomap::testing::flat_map(16);
    auto s0 = build_scene(flat, PlanarPoint{10.0, 10.0}, 1);
    CHECK(s0.bs_position.z == 5.0);
    CHECK(s0.bs_position.x == 10.0);
    CHECK(s0.bs_position.y == 10.0);

    auto tall = flat;
    radiomap::testing::add_block(tall, 2, 2, 4, 4, 30.0f);
    auto s1 = build_scene(tall, PlanarPoint{20.0, 20.0}, 1);
    CHECK(s1.bs_position.z == 35.0);
}

TEST_CASE("build_scene - outdoor mask follows the UE height rule")
{
    auto m = radiomap::testing::flat_map(8);
    m.at(3, 3) = 20.0f;
    auto s = build_scene(m, PlanarPoint{1.0, 1.0}, 0);
    for (int iy = 0; iy < 8; ++iy)
        for (int ix = 0; ix < 8; ++ix)
            CHECK(s.is_outdoor({ix, iy}) == !(ix == 3 && iy == 3));
    CHECK(s.outdoor_count() == 63);

    // property: the mask equals the pointwise predicate on random maps
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        auto g = generate_synthetic_map(GridSpec{32, 32, 2.0}, MapStyle::DenseClusters, seed);
        g.at(0, 0) = 1.5f; // exactly at UE height: still outdoor
        g.at(1, 0) = 1.6f;
        auto mask = derive_outdoor_mask(g);
        for (std::size_t i = 0; i < g.values().size(); ++i)
            REQUIRE((mask[i] != 0) == (g[i] <= 1.5f));
    }
}

TEST_CASE("build_scene - deterministic and validated")
{
    auto m = generate_synthetic_map(GridSpec{32, 32, 2.0}, MapStyle::OpenSpace, 2);
    auto a = build_scene(m, std::nullopt, 99);
    auto b = build_scene(m, std::nullopt, 99);
    CHECK(a.bs_position == b.bs_position);
    CHECK(a.antenna_azimuth_rad == b.antenna_azimuth_rad);
    CHECK(a.bs_position.x >= 0.0);
    CHECK(a.bs_position.x <= 64.0);
    CHECK(a.antenna_azimuth_rad >= 0.0);
    CHECK(a.antenna_azimuth_rad < 2.0 * std::numbers::pi);

    CHECK_THROWS_AS(build_scene(m, PlanarPoint{-1.0, 3.0}, 0), std::out_of_range);
    CHECK_THROWS_AS(build_scene(m, PlanarPoint{3.0, 64.5}, 0), std::out_of_range);
    MetricMap wrong(GridSpec{32, 32, 2.0}, MetricKind::Throughput);
    CHECK_THROWS_AS(build_scene(wrong, std::nullopt, 0), std::invalid_argument);
}

TEST_CASE("map styles - names round trip")
{
    CHECK(map_style_from_string(to_string(MapStyle::OpenSpace)) == MapStyle::OpenSpace);
    CHECK(map_style_from_string(to_string(MapStyle::DenseClusters)) == MapStyle::DenseClusters);
    CHECK_THROWS_AS(map_style_from_string("suburban"), std::invalid_argument);
}
