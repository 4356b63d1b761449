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

#include "radiomap/dataset.hpp"
#include "radiomap/errors.hpp"
#include "radiomap/parallel.hpp"
#include "radiomap/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <set>
#include <stdexcept>
#include <tuple>

namespace radiomap::dataset
{
    using nlohmann::ordered_json;

    std::string_view to_string(Augmentation a)
    {
        switch (a)
        {
        case Augmentation::Identity:
            return "identity";
        case Augmentation::Rot90:
            return "rot90";
        case Augmentation::Rot180:
            return "rot180";
        case Augmentation::Rot270:
            return "rot270";
        case Augmentation::MirrorH:
            return "mirror_h";
        }
        return "?";
    }

    Augmentation augmentation_from_string(std::string_view name)
    {
        for (auto a : kAllAugmentations)
            if (to_string(a) == name)
                return a;
        throw std::invalid_argument("unknown augmentation: " + std::string(name));
    }

    std::string_view to_string(Split s)
    {
        switch (s)
        {
        case Split::Train:
            return "train";
        case Split::Val:
            return "val";
        case Split::Test:
            return "test";
        }
        return "?";
    }

    std::string_view to_string(SceneStyle s)
    {
        switch (s)
        {
        case SceneStyle::Alternate:
            return "alternate";
        case SceneStyle::Open:
            return "open";
        case SceneStyle::Dense:
            return "dense";
        }
        return "?";
    }

    SceneStyle scene_style_from_string(std::string_view name)
    {
        if (name == "alternate")
            return SceneStyle::Alternate;
        if (name == "open")
            return SceneStyle::Open;
        if (name == "dense")
            return SceneStyle::Dense;
        throw std::invalid_argument("unknown scene style: " + std::string(name));
    }

    CellIndex augment_cell(CellIndex c, const GridSpec &spec, Augmentation a)
    {
        const int nx = spec.n_x, ny = spec.n_y;
        if (a != Augmentation::Identity && a != Augmentation::MirrorH && nx != ny)
            throw std::invalid_argument("rotations need a square grid, got " + std::to_string(nx) + "x" +
                                        std::to_string(ny));
        switch (a)
        {
        case Augmentation::Identity:
            return c;
        case Augmentation::Rot90:
            return {c.iy, nx - 1 - c.ix};
        case Augmentation::Rot180:
            return {nx - 1 - c.ix, ny - 1 - c.iy};
        case Augmentation::Rot270:
            return {ny - 1 - c.iy, c.ix};
        case Augmentation::MirrorH:
            return {nx - 1 - c.ix, c.iy};
        }
        return c;
    }

    MetricMap augment(const MetricMap &map, Augmentation a)
    {
        const auto &spec = map.spec();
        MetricMap out(spec, map.kind(), 0.0f);
        out.set_sparse(map.sparse());
        for (std::size_t i = 0; i < spec.cell_count(); ++i)
        {
            auto to = augment_cell(spec.cell_of(i), spec, a);
            out.at(to.ix, to.iy) = map[i];
        }
        return out;
    }

    std::array<std::vector<MetricMap>, 5> augment_entry(const std::vector<MetricMap> &channels)
    {
        std::array<std::vector<MetricMap>, 5> variants;
        for (std::size_t v = 0; v < kAllAugmentations.size(); ++v)
            for (const auto &m : channels)
                variants[v].push_back(augment(m, kAllAugmentations[v]));
        return variants;
    }

    std::vector<sampling::Sample> augment_samples(const std::vector<sampling::Sample> &samples, const GridSpec &spec,
                                                  Augmentation a)
    {
        std::vector<sampling::Sample> out = samples;
        for (auto &s : out)
        {
            auto to = augment_cell({s.ix, s.iy}, spec, a);
            s.ix = to.ix;
            s.iy = to.iy;
        }
        std::sort(out.begin(), out.end(), [](const auto &l, const auto &r)
                  { return std::tie(l.iy, l.ix) < std::tie(r.iy, r.ix); });
        return out;
    }

    std::vector<Split> assign_splits(int n_scenes, std::uint64_t seed)
    {
        if (n_scenes < 0)
            throw std::invalid_argument("scene count must be non-negative");
        int n_test = n_scenes >= 3 ? std::max(1, static_cast<int>(std::lround(0.06 * n_scenes))) : 0;
        int n_val = n_scenes >= 2 ? std::max(1, static_cast<int>(std::lround(0.10 * n_scenes))) : 0;

        std::vector<int> order(static_cast<std::size_t>(n_scenes));
        for (int i = 0; i < n_scenes; ++i)
            order[static_cast<std::size_t>(i)] = i;
        Rng rng(mix_seed(seed, {0x73706c6974}));
        for (int i = n_scenes - 1; i > 0; --i)
            std::swap(order[static_cast<std::size_t>(i)],
                      order[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1))]);

        std::vector<Split> splits(static_cast<std::size_t>(n_scenes), Split::Train);
        for (int k = 0; k < n_test; ++k)
            splits[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = Split::Test;
        for (int k = n_test; k < n_test + n_val; ++k)
            splits[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = Split::Val;
        return splits;
    }

    void DatasetConfig::validate() const
    {
        grid.validate();
        propagation.validate();
        array.validate();
        ofdm.validate();
        budget.validate();
        if (n_scenes < 1 || bs_per_scene < 1)
            throw std::invalid_argument("dataset needs at least one scene and one BS per scene");
        if (power_levels_dbm.empty())
            throw std::invalid_argument("dataset needs at least one power level");
        if (plan.n_points < 1)
            throw std::invalid_argument("sample count must be positive");
        if (link.subband_size < 0)
            throw std::invalid_argument("subband size must be non-negative");
        if (materialize_augmentations && grid.n_x != grid.n_y)
            throw std::invalid_argument("materialized rotations need a square grid");
    }

    // ---- config <-> JSON -------------------------------------------------

    namespace
    {
        std::string_view pattern_name(mimo::AntennaPattern p)
        {
            return p == mimo::AntennaPattern::Isotropic ? "isotropic" : "directional";
        }

        mimo::AntennaPattern pattern_from_name(const std::string &name)
        {
            if (name == "isotropic")
                return mimo::AntennaPattern::Isotropic;
            if (name == "directional")
                return mimo::AntennaPattern::Directional;
            throw std::invalid_argument("unknown antenna pattern: " + name);
        }

        ordered_json config_json(const DatasetConfig &c)
        {
            ordered_json j;
            j["seed"] = c.seed;
            j["grid"] = {{"n_x", c.grid.n_x}, {"n_y", c.grid.n_y}, {"resolution_m", c.grid.resolution_m}};
            j["scene"] = {{"style", to_string(c.style)},
                          {"ue_height_m", c.scene.ue_height_m},
                          {"bs_clearance_m", c.scene.bs_clearance_m}};
            j["propagation"] = {{"carrier_hz", c.propagation.carrier_hz},
                                {"max_reflections", c.propagation.max_reflections},
                                {"reflection_coeff", c.propagation.reflection_coeff},
                                {"include_ground_reflection", c.propagation.include_ground_reflection}};
            j["array"] = {{"n_t", c.array.n_t},
                          {"n_r", c.array.n_r},
                          {"element_spacing_wavelengths", c.array.element_spacing_wavelengths}};
            j["ofdm"] = {{"bandwidth_hz", c.ofdm.bandwidth_hz},
                         {"subcarrier_spacing_hz", c.ofdm.subcarrier_spacing_hz},
                         {"n_subcarriers", c.ofdm.n_subcarriers},
                         {"decimation", c.ofdm.decimation}};
            j["budget"] = {{"tx_power_dbm", c.budget.tx_power_dbm},
                           {"noise_dbm", c.budget.noise_dbm},
                           {"n_re_per_symbol", c.budget.n_re_per_symbol},
                           {"symbol_duration_s", c.budget.symbol_duration_s}};
            j["link"] = {{"antenna", pattern_name(c.link_antenna)}, {"subband_size", c.link.subband_size}};
            j["sampling"] = {{"strategy", sampling::to_string(c.plan.strategy)}, {"n_points", c.plan.n_points}};
            j["dataset"] = {{"n_scenes", c.n_scenes},
                            {"bs_per_scene", c.bs_per_scene},
                            {"power_levels_dbm", c.power_levels_dbm},
                            {"materialize_augmentations", c.materialize_augmentations}};
            return j;
        }

        void check_keys(const ordered_json &obj, std::string_view where, std::initializer_list<std::string_view> allowed)
        {
            if (!obj.is_object())
                throw std::invalid_argument("config: '" + std::string(where) + "' must be an object");
            for (auto it = obj.begin(); it != obj.end(); ++it)
                if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
                    throw std::invalid_argument("config: unknown key '" + std::string(where) + "." + it.key() + "'");
        }

        template <typename T>
        void read(const ordered_json &obj, const char *key, T &target)
        {
            if (auto it = obj.find(key); it != obj.end())
                target = it->get<T>();
        }
    }

    std::string to_json(const DatasetConfig &config)
    {
        return config_json(config).dump(2);
    }

    DatasetConfig config_from_json(std::string_view json_text, const DatasetConfig &defaults)
    {
        DatasetConfig c = defaults;
        ordered_json j;
        try
        {
            j = ordered_json::parse(json_text);
            check_keys(j, "<root>",
                       {"seed", "grid", "scene", "propagation", "array", "ofdm", "budget", "link", "sampling",
                        "dataset"});
            read(j, "seed", c.seed);
            if (auto g = j.find("grid"); g != j.end())
            {
                check_keys(*g, "grid", {"n_x", "n_y", "resolution_m"});
                read(*g, "n_x", c.grid.n_x);
                read(*g, "n_y", c.grid.n_y);
                read(*g, "resolution_m", c.grid.resolution_m);
            }
            if (auto s = j.find("scene"); s != j.end())
            {
                check_keys(*s, "scene", {"style", "ue_height_m", "bs_clearance_m"});
                if (s->contains("style"))
                    c.style = scene_style_from_string((*s)["style"].get<std::string>());
                read(*s, "ue_height_m", c.scene.ue_height_m);
                read(*s, "bs_clearance_m", c.scene.bs_clearance_m);
            }
            if (auto p = j.find("propagation"); p != j.end())
            {
                check_keys(*p, "propagation",
                           {"carrier_hz", "max_reflections", "reflection_coeff", "include_ground_reflection"});
                read(*p, "carrier_hz", c.propagation.carrier_hz);
                read(*p, "max_reflections", c.propagation.max_reflections);
                read(*p, "reflection_coeff", c.propagation.reflection_coeff);
                read(*p, "include_ground_reflection", c.propagation.include_ground_reflection);
            }
            if (auto a = j.find("array"); a != j.end())
            {
                check_keys(*a, "array", {"n_t", "n_r", "element_spacing_wavelengths"});
                read(*a, "n_t", c.array.n_t);
                read(*a, "n_r", c.array.n_r);
                read(*a, "element_spacing_wavelengths", c.array.element_spacing_wavelengths);
            }
            if (auto o = j.find("ofdm"); o != j.end())
            {
                check_keys(*o, "ofdm", {"bandwidth_hz", "subcarrier_spacing_hz", "n_subcarriers", "decimation"});
                read(*o, "bandwidth_hz", c.ofdm.bandwidth_hz);
                read(*o, "subcarrier_spacing_hz", c.ofdm.subcarrier_spacing_hz);
                read(*o, "n_subcarriers", c.ofdm.n_subcarriers);
                read(*o, "decimation", c.ofdm.decimation);
            }
            if (auto b = j.find("budget"); b != j.end())
            {
                check_keys(*b, "budget", {"tx_power_dbm", "noise_dbm", "n_re_per_symbol", "symbol_duration_s"});
                read(*b, "tx_power_dbm", c.budget.tx_power_dbm);
                read(*b, "noise_dbm", c.budget.noise_dbm);
                read(*b, "n_re_per_symbol", c.budget.n_re_per_symbol);
                read(*b, "symbol_duration_s", c.budget.symbol_duration_s);
            }
            if (auto l = j.find("link"); l != j.end())
            {
                check_keys(*l, "link", {"antenna", "subband_size"});
                if (l->contains("antenna"))
                    c.link_antenna = pattern_from_name((*l)["antenna"].get<std::string>());
                read(*l, "subband_size", c.link.subband_size);
            }
            if (auto s = j.find("sampling"); s != j.end())
            {
                check_keys(*s, "sampling", {"strategy", "n_points"});
                if (s->contains("strategy"))
                    c.plan.strategy = sampling::strategy_from_string((*s)["strategy"].get<std::string>());
                read(*s, "n_points", c.plan.n_points);
            }
            if (auto d = j.find("dataset"); d != j.end())
            {
                check_keys(*d, "dataset", {"n_scenes", "bs_per_scene", "power_levels_dbm", "materialize_augmentations"});
                read(*d, "n_scenes", c.n_scenes);
                read(*d, "bs_per_scene", c.bs_per_scene);
                read(*d, "power_levels_dbm", c.power_levels_dbm);
                read(*d, "materialize_augmentations", c.materialize_augmentations);
            }
        }
        catch (const nlohmann::json::exception &e)
        {
            throw std::invalid_argument(std::string("config: ") + e.what());
        }
        c.plan.seed = c.seed;
        return c;
    }

    std::string to_json(const DatasetManifest &m)
    {
        ordered_json j;
        j["format"] = "radiomap-dataset";
        j["version"] = 1;
        j["config"] = config_json(m.config);
        j["channels"] = kChannelFiles;
        j["augmentations"] = ordered_json::array();
        for (auto a : kAllAugmentations)
            j["augmentations"].push_back(to_string(a));

        auto &entries = j["entries"] = ordered_json::array();
        for (const auto &e : m.entries)
        {
            ordered_json files;
            for (std::size_t c = 0; c < kChannelFiles.size(); ++c)
                files[std::string(kChannelFiles[c])] = e.files[c];
            entries.push_back({{"scene_id", e.scene_id},
                               {"bs_id", e.bs_id},
                               {"power_index", e.power_index},
                               {"power_dbm", e.power_dbm},
                               {"augmentation", to_string(e.augmentation)},
                               {"materialized", e.materialized},
                               {"split", to_string(e.split)},
                               {"bs_position", {e.bs_position.x, e.bs_position.y, e.bs_position.z}},
                               {"antenna_azimuth_rad", e.antenna_azimuth_rad},
                               {"files", files},
                               {"samples", e.samples_file},
                               {"n_samples", e.n_samples}});
        }
        auto &skipped = j["skipped"] = ordered_json::array();
        for (const auto &s : m.skipped)
            skipped.push_back(
                {{"scene_id", s.scene_id}, {"bs_id", s.bs_id}, {"power_index", s.power_index}, {"reason", s.reason}});
        return j.dump(2) + "\n";
    }

    // ---- generation ------------------------------------------------------

    Placement simulate_placement(const geoscene::Scene &scene, const DatasetConfig &config, int jobs)
    {
        auto prop = config.propagation;
        prop.antenna = mimo::AntennaPattern::Isotropic;
        Placement p{scene, raytrace::trace_scene(scene, prop, jobs), {}, {}};
        p.dir = raytrace::apply_antenna(p.iso, mimo::AntennaPattern::Directional, scene.antenna_azimuth_rad);
        auto link = config.link;
        link.jobs = jobs;
        const auto &source = config.link_antenna == mimo::AntennaPattern::Directional ? p.dir : p.iso;
        p.eigen = linkadapt::compute_eigen_table(source, config.array, config.ofdm, link);
        return p;
    }

    namespace
    {
        std::string two_digits(int v, int width)
        {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%0*d", width, v);
            return buf;
        }

        std::string scene_dir_name(int scene) { return "scene_" + two_digits(scene, 3); }
        std::string entry_dir_name(int bs, int power)
        {
            return "bs_" + two_digits(bs, 3) + "_p" + two_digits(power, 2);
        }

        // Directories created by this run, so a failed run can remove what it wrote.
        class CreatedDirs
        {
        public:
            void make(const std::filesystem::path &dir)
            {
                std::vector<std::filesystem::path> missing;
                for (auto p = dir; !p.empty() && !std::filesystem::exists(p); p = p.parent_path())
                {
                    missing.push_back(p);
                    if (p == p.parent_path())
                        break;
                }
                std::error_code ec;
                std::filesystem::create_directories(dir, ec);
                if (ec)
                    throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
                std::lock_guard lock(mutex_);
                created_.insert(created_.end(), missing.rbegin(), missing.rend());
            }

            void remove_all() noexcept
            {
                std::lock_guard lock(mutex_);
                for (auto it = created_.rbegin(); it != created_.rend(); ++it)
                {
                    std::error_code ec;
                    std::filesystem::remove_all(*it, ec);
                }
                created_.clear();
            }

        private:
            std::mutex mutex_;
            std::vector<std::filesystem::path> created_;
        };

        void write_samples(const std::vector<sampling::Sample> &samples, const std::filesystem::path &path)
        {
            std::ofstream out(path, std::ios::binary);
            if (!out)
                throw IoError("cannot open " + path.string() + " for writing");
            sampling::write_samples_csv(samples, out);
            out.flush();
            if (!out)
                throw IoError("short write to " + path.string());
        }

        struct JobOutput
        {
            std::vector<ManifestEntry> entries;
            std::vector<SkippedPlacement> skipped;
        };

        bool all_zero(const MetricMap &m)
        {
            return std::all_of(m.values().begin(), m.values().end(), [](float v) { return v == 0.0f; });
        }
    }

    DatasetManifest generate_dataset(const DatasetConfig &config_in, const ProgressFn &progress)
    {
        DatasetConfig config = config_in;
        config.plan.seed = config.seed;
        config.validate();

        const auto &out_dir = config.out_dir;
        const auto splits = assign_splits(config.n_scenes, config.seed);
        CreatedDirs created;
        const auto manifest_path = out_dir / "manifest.json";

        try
        {
            created.make(out_dir);

            // Building maps first: a scene without outdoor cells is skipped as a whole.
            std::vector<MetricMap> maps(static_cast<std::size_t>(config.n_scenes));
            for (int s = 0; s < config.n_scenes; ++s)
            {
                auto style = config.style == SceneStyle::Open    ? geoscene::MapStyle::OpenSpace
                             : config.style == SceneStyle::Dense ? geoscene::MapStyle::DenseClusters
                             : (s % 2 == 0)                      ? geoscene::MapStyle::OpenSpace
                                                                 : geoscene::MapStyle::DenseClusters;
                maps[static_cast<std::size_t>(s)] =
                    geoscene::generate_synthetic_map(config.grid, style, mix_seed(config.seed, {1, static_cast<std::uint64_t>(s)}));
            }

            const auto n_jobs = static_cast<std::size_t>(config.n_scenes) * static_cast<std::size_t>(config.bs_per_scene);
            std::vector<JobOutput> outputs(n_jobs);
            const int outer = config.jobs <= 0 ? default_jobs() : config.jobs;
            // Parallelize across placements when there are enough of them; otherwise inside each.
            const bool across = outer > 1 && n_jobs >= static_cast<std::size_t>(outer);
            std::mutex progress_mutex;

            parallel_for(n_jobs, across ? outer : 1, [&](std::size_t job)
            {
                const int scene_id = static_cast<int>(job) / config.bs_per_scene;
                const int bs_id = static_cast<int>(job) % config.bs_per_scene;
                auto &output = outputs[job];
                const auto &map = maps[static_cast<std::size_t>(scene_id)];

                auto scene = geoscene::build_scene(
                    map, std::nullopt,
                    mix_seed(config.seed, {2, static_cast<std::uint64_t>(scene_id), static_cast<std::uint64_t>(bs_id)}),
                    config.scene);
                if (scene.outdoor_count() == 0)
                {
                    if (bs_id == 0)
                        output.skipped.push_back({scene_id, -1, -1, "no outdoor cells"});
                    return;
                }

                const auto placement = simulate_placement(scene, config, across ? 1 : outer);
                for (int pi = 0; pi < static_cast<int>(config.power_levels_dbm.size()); ++pi)
                {
                    auto budget = config.budget;
                    budget.tx_power_dbm = config.power_levels_dbm[static_cast<std::size_t>(pi)];
                    auto link = linkadapt::link_maps_from_eigen(placement.eigen, budget);
                    if (all_zero(link.throughput))
                    {
                        output.skipped.push_back({scene_id, bs_id, pi, "zero throughput everywhere"});
                        continue;
                    }

                    auto plan = config.plan;
                    plan.seed = mix_seed(config.seed, {3, static_cast<std::uint64_t>(scene_id),
                                                       static_cast<std::uint64_t>(bs_id), static_cast<std::uint64_t>(pi)});
                    sampling::SparseMaps sparse{};
                    try
                    {
                        sparse = sampling::draw_samples(
                            plan, {link.ri, link.cqi, link.throughput, &placement.iso.path_gain}, scene.outdoor_mask);
                    }
                    catch (const std::invalid_argument &e)
                    {
                        output.skipped.push_back({scene_id, bs_id, pi, e.what()});
                        continue;
                    }

                    const std::vector<MetricMap> channels{map,      placement.iso.path_gain, placement.dir.path_gain,
                                                          link.ri,  link.cqi,                link.throughput,
                                                          sparse.ri, sparse.cqi,             sparse.throughput};
                    const std::filesystem::path rel = std::filesystem::path(scene_dir_name(scene_id)) / entry_dir_name(bs_id, pi);

                    for (auto aug : kAllAugmentations)
                    {
                        const bool write = aug == Augmentation::Identity || config.materialize_augmentations;
                        const auto entry_rel = aug == Augmentation::Identity || !write ? rel : rel / std::string(to_string(aug));
                        ManifestEntry entry;
                        entry.scene_id = scene_id;
                        entry.bs_id = bs_id;
                        entry.power_index = pi;
                        entry.power_dbm = budget.tx_power_dbm;
                        entry.augmentation = aug;
                        entry.split = splits[static_cast<std::size_t>(scene_id)];
                        entry.materialized = write;
                        entry.n_samples = sparse.samples.size();
                        entry.bs_position = scene.bs_position;
                        entry.antenna_azimuth_rad = scene.antenna_azimuth_rad;
                        for (auto name : kChannelFiles)
                            entry.files.push_back((entry_rel / (std::string(name) + ".npy")).generic_string());
                        entry.samples_file = (entry_rel / "samples.csv").generic_string();

                        if (write)
                        {
                            created.make(out_dir / entry_rel);
                            for (std::size_t c = 0; c < channels.size(); ++c)
                            {
                                const auto path = out_dir / entry.files[c];
                                if (aug == Augmentation::Identity)
                                    write_grid(channels[c], path);
                                else
                                    write_grid(augment(channels[c], aug), path);
                            }
                            write_samples(augment_samples(sparse.samples, config.grid, aug), out_dir / entry.samples_file);
                        }
                        output.entries.push_back(std::move(entry));
                    }
                }
                if (progress)
                {
                    std::lock_guard lock(progress_mutex);
                    progress("scene " + std::to_string(scene_id) + " bs " + std::to_string(bs_id) + " done");
                }
            });

            DatasetManifest manifest;
            manifest.config = config;
            for (auto &o : outputs)
            {
                for (auto &e : o.entries)
                    manifest.entries.push_back(std::move(e));
                for (auto &s : o.skipped)
                    manifest.skipped.push_back(std::move(s));
            }

            const auto tmp = out_dir / "manifest.json.tmp";
            {
                std::ofstream out(tmp, std::ios::binary);
                if (!out)
                    throw IoError("cannot open " + tmp.string() + " for writing");
                out << to_json(manifest);
                out.flush();
                if (!out)
                    throw IoError("short write to " + tmp.string());
            }
            std::error_code ec;
            std::filesystem::rename(tmp, manifest_path, ec);
            if (ec)
                throw IoError("cannot move manifest into place: " + ec.message());
            return manifest;
        }
        catch (...)
        {
            std::error_code ec;
            std::filesystem::remove(out_dir / "manifest.json.tmp", ec);
            created.remove_all();
            throw;
        }
    }
}
