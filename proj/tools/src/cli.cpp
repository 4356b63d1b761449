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

#include "radiomap_cli/cli.hpp"

#include "radiomap/baseline.hpp"
#include "radiomap/dataset.hpp"
#include "radiomap/errors.hpp"
#include "radiomap/metrics.hpp"
#include "radiomap/parallel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace radiomap::cli
{
    namespace
    {
        namespace fs = std::filesystem;
        using nlohmann::ordered_json;

        struct Globals
        {
            std::uint64_t seed = 0;
            std::string config_path;
            std::string out_dir = ".";
            int jobs = 0;
            CLI::Option *seed_opt = nullptr;
            CLI::Option *jobs_opt = nullptr;
            CLI::Option *out_opt = nullptr;
        };

        std::string slurp(const fs::path &path)
        {
            std::ifstream in(path, std::ios::binary);
            if (!in)
                throw IoError("cannot read " + path.string());
            std::ostringstream s;
            s << in.rdbuf();
            return s.str();
        }

        void write_text(const fs::path &path, const std::string &text)
        {
            std::ofstream out(path, std::ios::binary);
            if (!out || !(out << text) || !out.flush())
                throw IoError("cannot write " + path.string());
        }

        fs::path prepare_out(const Globals &g)
        {
            fs::path out = g.out_dir;
            std::error_code ec;
            fs::create_directories(out, ec);
            if (ec)
                throw IoError("cannot create " + out.string() + ": " + ec.message());
            return out;
        }

        // built-ins < config file < flags
        dataset::DatasetConfig load_config(const Globals &g)
        {
            dataset::DatasetConfig c;
            if (!g.config_path.empty())
                c = dataset::config_from_json(slurp(g.config_path), c);
            if (g.seed_opt->count() > 0)
                c.seed = g.seed;
            if (g.jobs_opt->count() > 0)
                c.jobs = g.jobs;
            if (g.out_opt->count() > 0)
                c.out_dir = g.out_dir;
            return c;
        }

        int effective_jobs(const dataset::DatasetConfig &c) { return c.jobs > 0 ? c.jobs : default_jobs(); }

        MetricMap read_buildings(const fs::path &path) { return read_grid(path, MetricKind::BuildingHeight); }

        // --- gen-map -------------------------------------------------------------

        struct GenMapArgs
        {
            std::string style;
        };

        void cmd_gen_map(const Globals &g, const GenMapArgs &a, std::ostream &out)
        {
            auto c = load_config(g);
            auto style = a.style.empty()
                             ? (c.style == dataset::SceneStyle::Dense ? geoscene::MapStyle::DenseClusters
                                                                     : geoscene::MapStyle::OpenSpace)
                             : geoscene::map_style_from_string(a.style);
            auto map = geoscene::generate_synthetic_map(c.grid, style, c.seed);
            auto dir = prepare_out(g);
            write_grid(map, dir / "B.npy");
            ordered_json meta{{"style", geoscene::to_string(style)},
                              {"seed", c.seed},
                              {"n_x", c.grid.n_x},
                              {"n_y", c.grid.n_y},
                              {"resolution_m", c.grid.resolution_m}};
            write_text(dir / "map.json", meta.dump(2) + "\n");
            out << (dir / "B.npy").string() << "\n";
        }

        // --- simulate ------------------------------------------------------------

        struct SimulateArgs
        {
            std::string map;
            std::optional<double> bs_x, bs_y;
            std::optional<double> power_dbm;
            std::string antenna;
        };

        void cmd_simulate(const Globals &g, const SimulateArgs &a, std::ostream &out)
        {
            auto c = load_config(g);
            if (a.bs_x.has_value() != a.bs_y.has_value())
                throw std::invalid_argument("--bs-x and --bs-y go together");
            if (a.power_dbm)
                c.budget.tx_power_dbm = *a.power_dbm;
            if (!a.antenna.empty())
                c.link_antenna = a.antenna == "isotropic" ? mimo::AntennaPattern::Isotropic
                                                          : mimo::AntennaPattern::Directional;

            auto buildings = read_buildings(a.map);
            std::optional<PlanarPoint> bs;
            if (a.bs_x)
                bs = PlanarPoint{*a.bs_x, *a.bs_y};
            auto scene = geoscene::build_scene(buildings, bs, c.seed, c.scene);
            auto placement = dataset::simulate_placement(scene, c, effective_jobs(c));
            auto link = linkadapt::link_maps_from_eigen(placement.eigen, c.budget);

            auto dir = prepare_out(g);
            write_grid(buildings, dir / "B.npy");
            write_grid(placement.iso.path_gain, dir / "P_iso.npy");
            write_grid(placement.dir.path_gain, dir / "P_dir.npy");
            write_grid(link.ri, dir / "RI.npy");
            write_grid(link.cqi, dir / "CQI.npy");
            write_grid(link.throughput, dir / "TP.npy");

            ordered_json meta;
            meta["seed"] = c.seed;
            meta["bs_position"] = {scene.bs_position.x, scene.bs_position.y, scene.bs_position.z};
            meta["antenna_azimuth_rad"] = scene.antenna_azimuth_rad;
            meta["tx_power_dbm"] = c.budget.tx_power_dbm;
            meta["link_antenna"] = c.link_antenna == mimo::AntennaPattern::Isotropic ? "isotropic" : "directional";
            meta["outdoor_cells"] = scene.outdoor_count();
            write_text(dir / "scene.json", meta.dump(2) + "\n");
            out << "simulated " << scene.outdoor_count() << " outdoor cells into " << dir.string() << "\n";
        }

        // --- sample --------------------------------------------------------------

        struct SampleArgs
        {
            std::string in;
            std::string strategy;
            std::optional<int> n;
        };

        void cmd_sample(const Globals &g, const SampleArgs &a, std::ostream &out)
        {
            auto c = load_config(g);
            auto plan = c.plan;
            plan.seed = c.seed;
            if (!a.strategy.empty())
                plan.strategy = sampling::strategy_from_string(a.strategy);
            if (a.n)
                plan.n_points = *a.n;

            const fs::path in = a.in;
            auto buildings = read_buildings(in / "B.npy");
            ReadOptions opts;
            opts.resolution_m = buildings.spec().resolution_m;
            opts.tp_max = kDefaultTpMax;
            auto ri = read_grid(in / "RI.npy", MetricKind::RI, opts);
            auto cqi = read_grid(in / "CQI.npy", MetricKind::CQI, opts);
            auto tp = read_grid(in / "TP.npy", MetricKind::Throughput, opts);
            std::optional<MetricMap> pg;
            if (plan.strategy == sampling::Strategy::Special)
                pg = read_grid(in / "P_iso.npy", MetricKind::PathGainIso, opts);
            auto outdoor = geoscene::derive_outdoor_mask(buildings, c.scene.ue_height_m);

            auto sparse = sampling::draw_samples(plan, {ri, cqi, tp, pg ? &*pg : nullptr}, outdoor);
            auto dir = prepare_out(g);
            write_grid(sparse.ri, dir / "RI_s.npy");
            write_grid(sparse.cqi, dir / "CQI_s.npy");
            write_grid(sparse.throughput, dir / "TP_s.npy");
            std::ostringstream csv;
            sampling::write_samples_csv(sparse.samples, csv);
            write_text(dir / "samples.csv", csv.str());
            out << sparse.samples.size() << " samples (" << sampling::to_string(plan.strategy) << ") into "
                << dir.string() << "\n";
        }

        // --- baseline ------------------------------------------------------------

        struct BaselineArgs
        {
            std::string samples;
            std::string map;
            std::string method = "knn";
            int k = 5;
        };

        void cmd_baseline(const Globals &g, const BaselineArgs &a, std::ostream &out)
        {
            auto c = load_config(g);
            std::ifstream in(a.samples);
            if (!in)
                throw IoError("cannot read " + a.samples);
            auto samples = sampling::read_samples_csv(in);
            auto buildings = read_buildings(a.map);
            const auto &spec = buildings.spec();
            for (const auto &s : samples)
                if (!spec.contains(s.ix, s.iy))
                    throw std::invalid_argument("sample cell outside the map");

            MetricMap pred;
            if (a.method == "linear")
            {
                auto outdoor = geoscene::derive_outdoor_mask(buildings, c.scene.ue_height_m);
                auto lattice = sampling::uniform_lattice(spec, static_cast<int>(samples.size()), outdoor);
                pred = baseline::linear_interpolate(samples, lattice, spec);
            }
            else
            {
                pred = baseline::knn_regress(samples, spec, a.k);
            }
            auto dir = prepare_out(g);
            write_grid(pred, dir / "TP_pred.npy");
            out << a.method << " reconstruction from " << samples.size() << " samples into "
                << (dir / "TP_pred.npy").string() << "\n";
        }

        // --- eval ----------------------------------------------------------------

        struct EvalArgs
        {
            std::string pred;
            std::string truth;
            std::string map;
            std::string samples;
            std::string metric = "TP";
            double top_fraction = 0.05;
        };

        void cmd_eval(const Globals &g, const EvalArgs &a, std::ostream &out)
        {
            auto c = load_config(g);
            const auto kind = metric_kind_from_string(a.metric);
            auto truth = read_grid(a.truth, kind);
            ReadOptions opts;
            opts.resolution_m = truth.spec().resolution_m;
            auto pred = read_grid(a.pred, kind, opts);

            CellMask mask(truth.spec().n_x, truth.spec().n_y, 1);
            if (!a.map.empty())
                mask = geoscene::derive_outdoor_mask(read_buildings(a.map), c.scene.ue_height_m);
            std::optional<std::vector<sampling::Sample>> exclude;
            if (!a.samples.empty())
            {
                std::ifstream in(a.samples);
                if (!in)
                    throw IoError("cannot read " + a.samples);
                exclude = sampling::read_samples_csv(in);
            }

            auto errors = evalmetrics::absolute_errors(pred, truth, mask, exclude ? &*exclude : nullptr);
            auto report = evalmetrics::summarize(errors);
            auto dir = prepare_out(g);
            const auto json = evalmetrics::to_json(report);
            write_text(dir / "report.json", json + "\n");

            std::ostringstream cdf;
            evalmetrics::write_cdf_csv(evalmetrics::error_cdf(std::move(errors)), cdf);
            write_text(dir / "cdf.csv", cdf.str());

            std::ostringstream top;
            evalmetrics::write_top_errors_csv(evalmetrics::top_error_locations(pred, truth, mask, a.top_fraction), top);
            write_text(dir / "top_errors.csv", top.str());
            out << json << "\n";
        }

        // --- dataset -------------------------------------------------------------

        struct DatasetArgs
        {
            std::optional<int> n_scenes;
            std::optional<int> bs_per_scene;
            bool materialize = false;
            bool quiet = false;
        };

        void cmd_dataset(const Globals &g, const DatasetArgs &a, std::ostream &out, std::ostream &err)
        {
            auto c = load_config(g);
            if (g.out_opt->count() == 0 && g.config_path.empty())
                c.out_dir = "dataset";
            if (a.n_scenes)
                c.n_scenes = *a.n_scenes;
            if (a.bs_per_scene)
                c.bs_per_scene = *a.bs_per_scene;
            if (a.materialize)
                c.materialize_augmentations = true;
            dataset::ProgressFn progress;
            if (!a.quiet)
                progress = [&err](std::string_view line) { err << line << "\n"; };
            auto manifest = dataset::generate_dataset(c, progress);
            out << manifest.entries.size() << " entries, " << manifest.skipped.size() << " skipped, manifest "
                << (c.out_dir / "manifest.json").string() << "\n";
        }
    }

    std::string cqi_table_csv()
    {
        std::string csv = "index,q,rate_x1024,se\n";
        for (const auto &e : linkadapt::CqiTable::nr_256qam().entries())
        {
            char line[96];
            std::snprintf(line, sizeof(line), "%d,%d,%.0f,%.4f\n", e.index, e.modulation_order, e.code_rate_x1024,
                          e.spectral_efficiency);
            csv += line;
        }
        return csv;
    }

    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"radiomap: communication-metric maps, sparse sampling and reconstruction baselines", "radiomap"};
        app.require_subcommand(1);
        app.fallthrough();

        Globals g;
        g.seed_opt = app.add_option("--seed", g.seed, "Master seed");
        app.add_option("--config", g.config_path, "JSON configuration file")->check(CLI::ExistingFile);
        g.out_opt = app.add_option("--out", g.out_dir, "Output directory");
        g.jobs_opt = app.add_option("--jobs", g.jobs, "Worker threads (default: available cores)")
                         ->check(CLI::PositiveNumber);

        GenMapArgs gen;
        auto *gen_cmd = app.add_subcommand("gen-map", "Synthetic building-height map");
        gen_cmd->add_option("--style", gen.style, "open or dense")->check(CLI::IsMember({"open", "dense"}));

        SimulateArgs sim;
        auto *sim_cmd = app.add_subcommand("simulate", "Ray trace a scene into P_iso/P_dir/RI/CQI/TP grids");
        sim_cmd->add_option("--map", sim.map, "Building map (B.npy)")->required()->check(CLI::ExistingFile);
        sim_cmd->add_option("--bs-x", sim.bs_x, "BS x in meters (random when omitted)");
        sim_cmd->add_option("--bs-y", sim.bs_y, "BS y in meters");
        sim_cmd->add_option("--power", sim.power_dbm, "Transmit power, dBm");
        sim_cmd->add_option("--antenna", sim.antenna, "Pattern behind RI/CQI/TP")
            ->check(CLI::IsMember({"isotropic", "directional"}));

        SampleArgs smp;
        auto *smp_cmd = app.add_subcommand("sample", "Draw sparse RI/CQI/TP measurements");
        smp_cmd->add_option("--in", smp.in, "Directory written by simulate")->required()->check(CLI::ExistingDirectory);
        smp_cmd->add_option("--strategy", smp.strategy, "random, grid or special")
            ->check(CLI::IsMember({"random", "grid", "special"}));
        smp_cmd->add_option("--n", smp.n, "Number of samples")->check(CLI::PositiveNumber);

        BaselineArgs bl;
        auto *bl_cmd = app.add_subcommand("baseline", "Reconstruct a throughput map from samples");
        bl_cmd->add_option("--samples", bl.samples, "samples.csv")->required()->check(CLI::ExistingFile);
        bl_cmd->add_option("--map", bl.map, "Building map (B.npy)")->required()->check(CLI::ExistingFile);
        bl_cmd->add_option("--method", bl.method, "linear or knn")->capture_default_str()->check(CLI::IsMember({"linear", "knn"}));
        bl_cmd->add_option("--k", bl.k, "Neighbours for knn")->capture_default_str()->check(CLI::PositiveNumber);

        EvalArgs ev;
        auto *ev_cmd = app.add_subcommand("eval", "Error statistics of a prediction against ground truth");
        ev_cmd->add_option("--pred", ev.pred, "Predicted map (NPY)")->required()->check(CLI::ExistingFile);
        ev_cmd->add_option("--truth", ev.truth, "Ground-truth map (NPY)")->required()->check(CLI::ExistingFile);
        ev_cmd->add_option("--map", ev.map, "Building map; restricts errors to outdoor cells")->check(CLI::ExistingFile);
        ev_cmd->add_option("--samples", ev.samples, "samples.csv; sampled cells are excluded")->check(CLI::ExistingFile);
        ev_cmd->add_option("--metric", ev.metric, "Grid kind")->capture_default_str()
            ->check(CLI::IsMember({"TP", "RI", "CQI", "P_iso", "P_dir"}));
        ev_cmd->add_option("--top-fraction", ev.top_fraction, "Share of cells in top_errors.csv")->capture_default_str()
            ->check(CLI::Range(1e-9, 1.0));

        DatasetArgs ds;
        auto *ds_cmd = app.add_subcommand("dataset", "Generate the full training dataset");
        ds_cmd->add_option("--scenes", ds.n_scenes, "Number of building maps")->check(CLI::PositiveNumber);
        ds_cmd->add_option("--bs-per-scene", ds.bs_per_scene, "BS placements per map")->check(CLI::PositiveNumber);
        ds_cmd->add_flag("--materialize-augmentations", ds.materialize, "Write rotated and mirrored copies");
        ds_cmd->add_flag("--quiet", ds.quiet, "No progress lines");

        auto *cqi_cmd = app.add_subcommand("cqi-table", "Print the 256QAM CQI table as CSV");

        std::vector<const char *> argv{"radiomap"};
        for (const auto &a : args)
            argv.push_back(a.c_str());
        try
        {
            app.parse(static_cast<int>(argv.size()), argv.data());
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit(e, out, err);
            return code == 0 ? kExitOk : kExitUsage;
        }

        try
        {
            if (*gen_cmd)
                cmd_gen_map(g, gen, out);
            else if (*sim_cmd)
                cmd_simulate(g, sim, out);
            else if (*smp_cmd)
                cmd_sample(g, smp, out);
            else if (*bl_cmd)
                cmd_baseline(g, bl, out);
            else if (*ev_cmd)
                cmd_eval(g, ev, out);
            else if (*ds_cmd)
                cmd_dataset(g, ds, out, err);
            else if (*cqi_cmd)
            {
                const auto csv = cqi_table_csv();
                if (g.out_opt->count() > 0)
                    write_text(prepare_out(g) / "cqi_table.csv", csv);
                out << csv;
            }
        }
        catch (const std::exception &e)
        {
            err << "radiomap: " << e.what() << "\n";
            return kExitRuntime;
        }
        return kExitOk;
    }

    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        std::vector<std::string> args;
        for (int i = 1; i < argc; ++i)
            args.emplace_back(argv[i]);
        return run(args, out, err);
    }
}
