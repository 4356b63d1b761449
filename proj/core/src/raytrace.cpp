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

#include "radiomap/raytrace.hpp"
#include "radiomap/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace radiomap::raytrace
{
    namespace
    {
        constexpr double kSideEps = 1e-9;     // meters; strict-side tests
        constexpr double kSpanEps = 1e-9;     // meters; reflection point inside wall extent
        constexpr double kMinLegPart = 1e-7;  // meters; shorter grid intervals are ignored

        double along_normal(const PlanarPoint &p, const Wall &w) { return w.axis == WallAxis::X ? p.x : p.y; }
        double along_wall(const PlanarPoint &p, const Wall &w) { return w.axis == WallAxis::X ? p.y : p.x; }

        // Signed distance to the wall line, positive on the free side.
        double side(const PlanarPoint &p, const Wall &w) { return w.facing * (along_normal(p, w) - w.coord); }

        PlanarPoint mirror(const PlanarPoint &p, const Wall &w)
        {
            PlanarPoint m = p;
            if (w.axis == WallAxis::X)
                m.x = 2.0 * w.coord - p.x;
            else
                m.y = 2.0 * w.coord - p.y;
            return m;
        }

        double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

        // Whether some point of wall `target` lies in the cone of rays leaving `apex` through wall
        // `through` on its free side. Conservative (may keep a few impossible pairs).
        bool reachable_through(const PlanarPoint &apex, const Wall &through, const Wall &target)
        {
            auto endpoint = [](const Wall &w, double t)
            {
                double along = w.lo + t * (w.hi - w.lo);
                return w.axis == WallAxis::X ? PlanarPoint{w.coord, along} : PlanarPoint{along, w.coord};
            };
            PlanarPoint a = endpoint(through, 0.0), b = endpoint(through, 1.0);
            PlanarPoint q0 = endpoint(target, 0.0), q1 = endpoint(target, 1.0);
            double orient = cross(a.x - apex.x, a.y - apex.y, b.x - apex.x, b.y - apex.y);
            double sgn = orient >= 0.0 ? 1.0 : -1.0;

            double t_lo = 0.0, t_hi = 1.0;
            // constraint f(t) = f0 + t (f1 - f0) >= -eps
            auto clip = [&](double f0, double f1)
            {
                const double eps = 1e-9;
                double df = f1 - f0;
                if (std::abs(df) < 1e-15)
                {
                    if (f0 < -eps)
                        t_hi = -1.0;
                    return;
                }
                double t = (-eps - f0) / df;
                if (df > 0)
                    t_lo = std::max(t_lo, t);
                else
                    t_hi = std::min(t_hi, t);
            };
            clip(side(q0, through), side(q1, through));
            clip(sgn * cross(a.x - apex.x, a.y - apex.y, q0.x - apex.x, q0.y - apex.y),
                 sgn * cross(a.x - apex.x, a.y - apex.y, q1.x - apex.x, q1.y - apex.y));
            clip(sgn * cross(q0.x - apex.x, q0.y - apex.y, b.x - apex.x, b.y - apex.y),
                 sgn * cross(q1.x - apex.x, q1.y - apex.y, b.x - apex.x, b.y - apex.y));
            return t_lo <= t_hi;
        }

        Direction direction_of(const Vec3 &from, const Vec3 &to)
        {
            double dx = to.x - from.x, dy = to.y - from.y, dz = to.z - from.z;
            double len = std::sqrt(dx * dx + dy * dy + dz * dz);
            Direction d;
            d.azimuth_rad = std::atan2(dy, dx);
            d.zenith_rad = len > 0.0 ? std::acos(std::clamp(dz / len, -1.0, 1.0)) : 0.0;
            return d;
        }
    }

    void PropagationConfig::validate() const
    {
        if (!(carrier_hz > 0.0))
            throw std::invalid_argument("carrier frequency must be positive");
        if (max_reflections < 0 || max_reflections > 3)
            throw std::invalid_argument("max_reflections must be in [0, 3]");
        if (!(reflection_coeff > 0.0 && reflection_coeff <= 1.0))
            throw std::invalid_argument("reflection coefficient must be in (0, 1]");
    }

    std::vector<Wall> extract_walls(const MetricMap &building_map, double ue_height_m)
    {
        const auto &spec = building_map.spec();
        const double r = spec.resolution_m;
        auto is_building = [&](int ix, int iy) { return building_map.at(ix, iy) > ue_height_m; };

        std::vector<Wall> walls;
        // Faces on x = k r between columns k-1 and k, then faces on y = k r between rows k-1 and k.
        for (int pass = 0; pass < 2; ++pass)
        {
            const bool x_faces = pass == 0;
            const int lines = x_faces ? spec.n_x : spec.n_y;
            const int run_len = x_faces ? spec.n_y : spec.n_x;
            for (int k = 1; k < lines; ++k)
            {
                Wall current;
                bool open = false;
                for (int j = 0; j <= run_len; ++j)
                {
                    bool have_face = false;
                    Wall face;
                    if (j < run_len)
                    {
                        CellIndex lower = x_faces ? CellIndex{k - 1, j} : CellIndex{j, k - 1};
                        CellIndex upper = x_faces ? CellIndex{k, j} : CellIndex{j, k};
                        bool bl = is_building(lower.ix, lower.iy);
                        bool bu = is_building(upper.ix, upper.iy);
                        if (bl != bu)
                        {
                            have_face = true;
                            face.axis = x_faces ? WallAxis::X : WallAxis::Y;
                            face.coord = k * r;
                            face.facing = bl ? 1 : -1;
                            const CellIndex &b = bl ? lower : upper;
                            face.height = building_map.at(b.ix, b.iy);
                            face.building_line = bl ? k - 1 : k;
                            face.cell_lo = face.cell_hi = j;
                        }
                    }
                    bool extends = open && have_face && face.facing == current.facing &&
                                   face.height == current.height && face.cell_lo == current.cell_hi + 1;
                    if (extends)
                    {
                        current.cell_hi = j;
                        continue;
                    }
                    if (open)
                    {
                        current.lo = current.cell_lo * r;
                        current.hi = (current.cell_hi + 1) * r;
                        walls.push_back(current);
                        open = false;
                    }
                    if (have_face)
                    {
                        current = face;
                        open = true;
                    }
                }
            }
        }
        return walls;
    }

    Tracer::Tracer(const geoscene::Scene &scene, const PropagationConfig &cfg)
        : cfg_(cfg), bs_(scene.bs_position), ue_height_(scene.ue_height_m),
          boresight_azimuth_(scene.antenna_azimuth_rad), outdoor_(scene.outdoor_mask), spec_(scene.spec())
    {
        cfg_.validate();
        wavelength_ = cfg_.wavelength_m();
        heights_.assign(scene.building_map.values().begin(), scene.building_map.values().end());
        walls_ = extract_walls(scene.building_map, scene.ue_height_m);

        const int wall_orders = cfg_.max_reflections;
        if (wall_orders < 1)
            return;
        const PlanarPoint bs{bs_.x, bs_.y};
        for (int w = 0; w < static_cast<int>(walls_.size()); ++w)
            if (side(bs, walls_[w]) > kSideEps)
                first_.push_back({mirror(bs, walls_[w]), w});
        if (wall_orders < 2)
            return;

        second_.resize(first_.size());
        for (std::size_t i = 0; i < first_.size(); ++i)
        {
            const auto &s1 = first_[i];
            for (int w = 0; w < static_cast<int>(walls_.size()); ++w)
            {
                if (w == s1.wall || side(s1.point, walls_[w]) <= kSideEps)
                    continue;
                if (!reachable_through(s1.point, walls_[s1.wall], walls_[w]))
                    continue;
                second_[i].push_back({mirror(s1.point, walls_[w]), w});
            }
        }
        if (wall_orders < 3)
            return;

        third_.resize(first_.size());
        for (std::size_t i = 0; i < first_.size(); ++i)
        {
            third_[i].resize(second_[i].size());
            for (std::size_t j = 0; j < second_[i].size(); ++j)
            {
                const auto &s2 = second_[i][j];
                for (int w = 0; w < static_cast<int>(walls_.size()); ++w)
                {
                    if (w == s2.wall || side(s2.point, walls_[w]) <= kSideEps)
                        continue;
                    if (!reachable_through(s2.point, walls_[s2.wall], walls_[w]))
                        continue;
                    third_[i][j].push_back({mirror(s2.point, walls_[w]), w});
                }
            }
        }
    }

    bool Tracer::segment_clear(const Vec3 &a, const Vec3 &b) const
    {
        const double r = spec_.resolution_m;
        const double dx = b.x - a.x, dy = b.y - a.y, dz = b.z - a.z;
        const double len2d = std::hypot(dx, dy);

        auto blocks = [&](double px, double py, double zmin)
        {
            int ix = static_cast<int>(std::floor(px / r));
            int iy = static_cast<int>(std::floor(py / r));
            if (!spec_.contains(ix, iy))
                return false;
            return heights_[spec_.linear(ix, iy)] > zmin;
        };

        if (len2d < kMinLegPart)
            return !blocks(a.x, a.y, std::min(a.z, b.z));

        // Parametric crossings of the vertical and horizontal grid lines (2D DDA).
        double tx = 2.0, ty = 2.0, dtx = 0.0, dty = 0.0;
        if (dx > 0.0)
        {
            tx = ((std::floor(a.x / r) + 1.0) * r - a.x) / dx;
            dtx = r / dx;
        }
        else if (dx < 0.0)
        {
            tx = ((std::ceil(a.x / r) - 1.0) * r - a.x) / dx;
            dtx = -r / dx;
        }
        if (dy > 0.0)
        {
            ty = ((std::floor(a.y / r) + 1.0) * r - a.y) / dy;
            dty = r / dy;
        }
        else if (dy < 0.0)
        {
            ty = ((std::ceil(a.y / r) - 1.0) * r - a.y) / dy;
            dty = -r / dy;
        }

        double t = 0.0;
        while (true)
        {
            double t_next = std::min({tx, ty, 1.0});
            if ((t_next - t) * len2d > kMinLegPart)
            {
                double mid = 0.5 * (t + t_next);
                double zmin = a.z + dz * (dz < 0.0 ? t_next : t);
                if (blocks(a.x + dx * mid, a.y + dy * mid, zmin))
                    return false;
            }
            if (t_next >= 1.0)
                break;
            if (tx <= t_next)
                tx += dtx;
            if (ty <= t_next)
                ty += dty;
            t = t_next;
        }
        return true;
    }

    void Tracer::emit(std::span<const int> wall_seq, std::span<const PlanarPoint> vertices, bool ground,
                      const Vec3 &ue, std::vector<MultipathComponent> &out) const
    {
        const std::size_t k = wall_seq.size();
        std::array<double, 5> cumulative{};
        for (std::size_t i = 1; i < vertices.size(); ++i)
            cumulative[i] = cumulative[i - 1] + std::hypot(vertices[i].x - vertices[i - 1].x,
                                                           vertices[i].y - vertices[i - 1].y);
        const double d2 = cumulative[vertices.size() - 1];
        const double dz = ground ? bs_.z + ue.z : bs_.z - ue.z;
        const double length = std::hypot(d2, dz);

        auto height_at = [&](double s)
        {
            double z = bs_.z - dz * (d2 > 0.0 ? s / d2 : 0.0);
            return ground ? std::abs(z) : z;
        };

        std::array<Vec3, 6> pts{};
        std::size_t n = 0;
        pts[n++] = bs_;
        const double s_ground = ground ? bs_.z * d2 / dz : -1.0;
        bool ground_placed = !ground;
        for (std::size_t i = 1; i < vertices.size(); ++i)
        {
            if (!ground_placed && s_ground <= cumulative[i])
            {
                double seg = cumulative[i] - cumulative[i - 1];
                double f = seg > 0.0 ? (s_ground - cumulative[i - 1]) / seg : 0.0;
                pts[n++] = {vertices[i - 1].x + f * (vertices[i].x - vertices[i - 1].x),
                            vertices[i - 1].y + f * (vertices[i].y - vertices[i - 1].y), 0.0};
                ground_placed = true;
            }
            if (i < vertices.size() - 1)
            {
                double z = height_at(cumulative[i]);
                if (z < 0.0 || z > walls_[wall_seq[i - 1]].height)
                    return;
                pts[n++] = {vertices[i].x, vertices[i].y, z};
            }
        }
        pts[n++] = ue;

        for (std::size_t i = 1; i < n; ++i)
            if (!segment_clear(pts[i - 1], pts[i]))
                return;

        MultipathComponent path;
        path.length_m = length;
        path.tau_s = length / kSpeedOfLight;
        path.bounce_count = static_cast<int>(k) + (ground ? 1 : 0);
        path.ground_bounce = ground;
        for (std::size_t i = 0; i < k; ++i)
            path.walls[i] = wall_seq[i];
        path.aod = direction_of(pts[0], pts[1]);
        path.aoa = direction_of(pts[n - 1], pts[n - 2]);
        double magnitude = wavelength_ / (4.0 * std::numbers::pi * length) *
                           std::pow(cfg_.reflection_coeff, path.bounce_count) *
                           std::pow(10.0, mimo::antenna_gain_db(cfg_.antenna, boresight_azimuth_, path.aod) / 20.0);
        path.alpha = std::polar(magnitude, -2.0 * std::numbers::pi * length / wavelength_);
        out.push_back(path);
    }

    void Tracer::try_path(std::span<const int> wall_seq, std::span<const PlanarPoint> images, const Vec3 &ue,
                          std::vector<MultipathComponent> &out) const
    {
        const std::size_t k = wall_seq.size();
        std::array<PlanarPoint, 5> vertices{};
        vertices[0] = {bs_.x, bs_.y};
        vertices[k + 1] = {ue.x, ue.y};

        // Walk back from the UE towards the BS, intersecting each wall with the line to its image.
        PlanarPoint p = vertices[k + 1];
        for (std::size_t i = k; i >= 1; --i)
        {
            const Wall &w = walls_[wall_seq[i - 1]];
            if (side(p, w) <= kSideEps)
                return;
            const PlanarPoint &s = images[i - 1];
            double pn = along_normal(p, w), sn = along_normal(s, w);
            double t = (w.coord - pn) / (sn - pn);
            double pa = along_wall(p, w), sa = along_wall(s, w);
            double along = pa + t * (sa - pa);
            if (along < w.lo - kSpanEps || along > w.hi + kSpanEps)
                return;
            p = w.axis == WallAxis::X ? PlanarPoint{w.coord, along} : PlanarPoint{along, w.coord};
            vertices[i] = p;
        }
        for (std::size_t i = 1; i <= k; ++i)
            if (side(vertices[i - 1], walls_[wall_seq[i - 1]]) <= kSideEps)
                return;

        std::span<const PlanarPoint> polyline(vertices.data(), k + 2);
        emit(wall_seq, polyline, false, ue, out);
        if (cfg_.include_ground_reflection && static_cast<int>(k) + 1 <= cfg_.max_reflections)
            emit(wall_seq, polyline, true, ue, out);
    }

    std::vector<MultipathComponent> Tracer::trace(CellIndex cell) const
    {
        if (!spec_.contains(cell.ix, cell.iy))
            throw std::out_of_range("cell outside the grid");
        if (!outdoor_.at(cell.ix, cell.iy))
            throw std::invalid_argument("cannot trace an indoor cell (" + std::to_string(cell.ix) + ", " +
                                        std::to_string(cell.iy) + ")");
        const Vec3 ue{spec_.center_x(cell.ix), spec_.center_y(cell.iy), ue_height_};

        std::vector<MultipathComponent> out;
        try_path({}, {}, ue, out);
        for (std::size_t i = 0; i < first_.size(); ++i)
        {
            const auto &s1 = first_[i];
            std::array<int, 1> seq1{s1.wall};
            std::array<PlanarPoint, 1> img1{s1.point};
            try_path(seq1, img1, ue, out);
            if (second_.empty())
                continue;
            for (std::size_t j = 0; j < second_[i].size(); ++j)
            {
                const auto &s2 = second_[i][j];
                std::array<int, 2> seq2{s1.wall, s2.wall};
                std::array<PlanarPoint, 2> img2{s1.point, s2.point};
                try_path(seq2, img2, ue, out);
                if (third_.empty())
                    continue;
                for (const auto &s3 : third_[i][j])
                {
                    std::array<int, 3> seq3{s1.wall, s2.wall, s3.wall};
                    std::array<PlanarPoint, 3> img3{s1.point, s2.point, s3.point};
                    try_path(seq3, img3, ue, out);
                }
            }
        }
        std::stable_sort(out.begin(), out.end(),
                         [](const MultipathComponent &a, const MultipathComponent &b) { return a.tau_s < b.tau_s; });
        return out;
    }

    std::vector<MultipathComponent> trace_cell(const geoscene::Scene &scene, const PropagationConfig &cfg,
                                               CellIndex cell)
    {
        return Tracer(scene, cfg).trace(cell);
    }

    double path_gain_db(std::span<const MultipathComponent> paths)
    {
        double power = 0.0;
        for (const auto &p : paths)
            power += std::norm(p.alpha);
        if (!(power > 0.0))
            return kPathGainFloorDb;
        return std::clamp(10.0 * std::log10(power), kPathGainFloorDb, kPathGainCeilDb);
    }

    SceneTrace trace_scene(const geoscene::Scene &scene, const PropagationConfig &cfg, int jobs)
    {
        Tracer tracer(scene, cfg);
        const auto &spec = scene.spec();
        SceneTrace result;
        result.spec = spec;
        result.paths.resize(spec.cell_count());
        result.path_gain = MetricMap(spec, cfg.antenna == mimo::AntennaPattern::Isotropic ? MetricKind::PathGainIso
                                                                                         : MetricKind::PathGainDir,
                                     static_cast<float>(kPathGainFloorDb));
        parallel_for(spec.cell_count(), jobs,
                     [&](std::size_t i)
                     {
                         auto cell = spec.cell_of(i);
                         if (!scene.is_outdoor(cell))
                             return;
                         result.paths[i] = tracer.trace(cell);
                         result.path_gain[i] = static_cast<float>(path_gain_db(result.paths[i]));
                     });
        return result;
    }

    SceneTrace apply_antenna(const SceneTrace &isotropic, mimo::AntennaPattern pattern, double boresight_azimuth_rad)
    {
        SceneTrace result = isotropic;
        result.path_gain = MetricMap(isotropic.spec, pattern == mimo::AntennaPattern::Isotropic
                                                         ? MetricKind::PathGainIso
                                                         : MetricKind::PathGainDir,
                                     std::vector<float>(isotropic.path_gain.values().begin(),
                                                        isotropic.path_gain.values().end()));
        for (std::size_t i = 0; i < result.paths.size(); ++i)
        {
            auto &paths = result.paths[i];
            if (paths.empty())
                continue;
            for (auto &p : paths)
                p.alpha *= std::pow(10.0, mimo::antenna_gain_db(pattern, boresight_azimuth_rad, p.aod) / 20.0);
            result.path_gain[i] = static_cast<float>(path_gain_db(paths));
        }
        return result;
    }

    void write_paths_csv(const SceneTrace &trace, std::ostream &out)
    {
        out << "cell_ix,cell_iy,path_index,re_alpha,im_alpha,tau_s,aod_az,aod_zen,aoa_az,aoa_zen,bounces\n";
        char line[512];
        for (std::size_t i = 0; i < trace.paths.size(); ++i)
        {
            auto cell = trace.spec.cell_of(i);
            for (std::size_t p = 0; p < trace.paths[i].size(); ++p)
            {
                const auto &m = trace.paths[i][p];
                std::snprintf(line, sizeof(line), "%d,%d,%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", cell.ix,
                              cell.iy, p, m.alpha.real(), m.alpha.imag(), m.tau_s, m.aod.azimuth_rad,
                              m.aod.zenith_rad, m.aoa.azimuth_rad, m.aoa.zenith_rad, m.bounce_count);
                out << line;
            }
        }
    }
}
