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

// Dataset generation: scenes x BS placements x transmit power levels, written as NPY grids with
// a JSON manifest that a training pipeline can consume.
//
// Layout under out_dir:
//   manifest.json
//   scene_XXX/bs_YYY_pZZ/{B,P_iso,P_dir,RI,CQI,TP,RI_s,CQI_s,TP_s}.npy + samples.csv
//   scene_XXX/bs_YYY_pZZ/<augmentation>/...   only with materialize_augmentations

#pragma once

#include "radiomap/grid.hpp"
#include "radiomap/linkadapt.hpp"
#include "radiomap/mimo.hpp"
#include "radiomap/raytrace.hpp"
#include "radiomap/sampling.hpp"
#include "radiomap/scene.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace radiomap::dataset
{
    enum class Augmentation
    {
        Identity,
        Rot90,
        Rot180,
        Rot270,
        MirrorH
    };

    inline constexpr std::array<Augmentation, 5> kAllAugmentations{
        Augmentation::Identity, Augmentation::Rot90, Augmentation::Rot180, Augmentation::Rot270,
        Augmentation::MirrorH};

    std::string_view to_string(Augmentation a);
    Augmentation augmentation_from_string(std::string_view name);

    // Where cell (ix, iy) lands. Rot90 sends (ix, iy) to (iy, n_x - 1 - ix); MirrorH flips x.
    // Rotations need a square grid.
    CellIndex augment_cell(CellIndex cell, const GridSpec &spec, Augmentation a);

    MetricMap augment(const MetricMap &map, Augmentation a);

    // Every channel of an entry under all five variants, in kAllAugmentations order.
    std::array<std::vector<MetricMap>, 5> augment_entry(const std::vector<MetricMap> &channels);

    // Sample coordinates moved with the grid, re-sorted row-major.
    std::vector<sampling::Sample> augment_samples(const std::vector<sampling::Sample> &samples, const GridSpec &spec,
                                                  Augmentation a);

    enum class Split
    {
        Train,
        Val,
        Test
    };

    std::string_view to_string(Split s);

    // Scene-level split close to 84/10/6. Val and test each receive at least one scene once
    // there are enough scenes (2 for val, 3 for test).
    std::vector<Split> assign_splits(int n_scenes, std::uint64_t seed);

    enum class SceneStyle
    {
        Alternate, // open, dense, open, ...
        Open,
        Dense
    };

    std::string_view to_string(SceneStyle s);
    SceneStyle scene_style_from_string(std::string_view name);

    // Full configuration surface; also the schema of the CLI's --config file.
    struct DatasetConfig
    {
        GridSpec grid;
        SceneStyle style = SceneStyle::Alternate;
        geoscene::SceneOptions scene;
        raytrace::PropagationConfig propagation;
        mimo::ArrayConfig array;
        mimo::OfdmConfig ofdm;
        linkadapt::RadioBudget budget;
        linkadapt::LinkOptions link;
        // Pattern used for the RI/CQI/TP maps; both path-gain maps are always written.
        mimo::AntennaPattern link_antenna = mimo::AntennaPattern::Directional;
        sampling::SamplePlan plan;

        int n_scenes = 8;
        int bs_per_scene = 10;
        std::vector<double> power_levels_dbm{40.0, 42.5, 45.0, 47.5, 50.0};
        std::uint64_t seed = 0;
        std::filesystem::path out_dir = "dataset";
        int jobs = 0;
        bool materialize_augmentations = false;

        void validate() const;
    };

    std::string to_json(const DatasetConfig &config);

    // Keys present in `json_text` override `defaults`; unknown keys are rejected.
    DatasetConfig config_from_json(std::string_view json_text, const DatasetConfig &defaults = {});

    inline constexpr std::array<std::string_view, 9> kChannelFiles{"B",  "P_iso", "P_dir", "RI",  "CQI",
                                                                   "TP", "RI_s",  "CQI_s", "TP_s"};

    struct ManifestEntry
    {
        int scene_id = 0;
        int bs_id = 0;
        int power_index = 0;
        double power_dbm = 0.0;
        Augmentation augmentation = Augmentation::Identity;
        Split split = Split::Train;
        bool materialized = true; // false: files hold the identity grids, apply `augmentation` on load
        std::vector<std::string> files; // relative paths, kChannelFiles order
        std::string samples_file;
        std::size_t n_samples = 0;
        Vec3 bs_position;
        double antenna_azimuth_rad = 0.0;
    };

    struct SkippedPlacement
    {
        int scene_id = 0;
        int bs_id = -1;      // -1: the whole scene
        int power_index = -1; // -1: every power level
        std::string reason;
    };

    struct DatasetManifest
    {
        DatasetConfig config;
        std::vector<ManifestEntry> entries; // sorted by (scene, bs, power, augmentation)
        std::vector<SkippedPlacement> skipped;
    };

    std::string to_json(const DatasetManifest &manifest);

    using ProgressFn = std::function<void(std::string_view)>;

    // Writes every grid and out_dir/manifest.json. Deterministic in config (jobs does not change
    // any output). On an I/O error the files written by this call are removed and the error
    // rethrown.
    DatasetManifest generate_dataset(const DatasetConfig &config, const ProgressFn &progress = {});

    // Simulation products for one placement, shared by the dataset pipeline and the CLI.
    struct Placement
    {
        geoscene::Scene scene;
        raytrace::SceneTrace iso;
        raytrace::SceneTrace dir;
        linkadapt::EigenTable eigen;
    };

    Placement simulate_placement(const geoscene::Scene &scene, const DatasetConfig &config, int jobs);
}
