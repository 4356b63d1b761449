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

// Deterministic multipath model over rasterized 2.5D scenes.
//
// Buildings are axis-aligned prisms, one per raster cell. Paths are the line-of-sight ray plus
// specular reflections constructed with the image method over the vertical building faces
// (merged into maximal segments of equal height) and, optionally, the ground plane. Every
// candidate path is checked for blockage leg by leg with a grid traversal that compares the
// ray height against the prism height of each crossed cell. Diffraction and diffuse
// scattering are not modelled.

#pragma once

#include "radiomap/grid.hpp"
#include "radiomap/mimo.hpp"
#include "radiomap/scene.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace radiomap::raytrace
{
    struct PropagationConfig
    {
        double carrier_hz = 3.5e9;
        int max_reflections = 2;         // wall and ground bounces per path, at most 3
        double reflection_coeff = 0.5;   // amplitude factor per bounce
        bool include_ground_reflection = true;
        mimo::AntennaPattern antenna = mimo::AntennaPattern::Isotropic;

        void validate() const;
        double wavelength_m() const { return kSpeedOfLight / carrier_hz; }
    };

    enum class WallAxis
    {
        X, // wall lies on the line x = coord
        Y  // wall lies on the line y = coord
    };

    // A vertical building face between a building cell and a free cell.
    struct Wall
    {
        WallAxis axis = WallAxis::X;
        double coord = 0.0;   // meters
        double lo = 0.0;      // extent along the wall, meters
        double hi = 0.0;
        double height = 0.0;  // meters
        int facing = 1;       // +1: free side lies towards larger coord
        int building_line = 0; // cell index of the building side along the wall normal
        int cell_lo = 0;      // inclusive cell range along the wall
        int cell_hi = 0;
    };

    // Faces between cells taller than `ue_height_m` and lower cells, merged along runs of equal
    // building height. Faces on the grid border are not walls.
    std::vector<Wall> extract_walls(const MetricMap &building_map, double ue_height_m = 1.5);

    // Per-scene tracer. Construction precomputes the wall list and the BS images; trace() is
    // const and may be called concurrently.
    class Tracer
    {
    public:
        Tracer(const geoscene::Scene &scene, const PropagationConfig &cfg);

        // Paths to the UE at the centre of an outdoor cell, sorted by delay.
        std::vector<MultipathComponent> trace(CellIndex cell) const;

        // true when the 3D segment stays at or above the prism height of every cell it crosses
        bool segment_clear(const Vec3 &a, const Vec3 &b) const;

        const std::vector<Wall> &walls() const { return walls_; }

    private:
        struct Image
        {
            PlanarPoint point;
            int wall = -1;
        };

        void try_path(std::span<const int> wall_seq, std::span<const PlanarPoint> images, const Vec3 &ue,
                      std::vector<MultipathComponent> &out) const;
        void emit(std::span<const int> wall_seq, std::span<const PlanarPoint> vertices, bool ground, const Vec3 &ue,
                  std::vector<MultipathComponent> &out) const;

        PropagationConfig cfg_;
        Vec3 bs_;
        double ue_height_ = 1.5;
        double boresight_azimuth_ = 0.0;
        CellMask outdoor_;
        GridSpec spec_;
        std::vector<double> heights_;
        std::vector<Wall> walls_;
        double wavelength_ = 0.0;

        std::vector<Image> first_;                 // BS images over walls the BS faces
        std::vector<std::vector<Image>> second_;   // per first_ entry: images of that image
        std::vector<std::vector<std::vector<Image>>> third_;
    };

    std::vector<MultipathComponent> trace_cell(const geoscene::Scene &scene, const PropagationConfig &cfg,
                                               CellIndex cell);

    // 10 log10(sum |alpha|^2) clamped to [-160, 0] dB; -160 for no paths.
    double path_gain_db(std::span<const MultipathComponent> paths);

    struct SceneTrace
    {
        GridSpec spec;
        std::vector<std::vector<MultipathComponent>> paths; // row-major, empty for indoor cells
        MetricMap path_gain;                                // dense; indoor cells at -160 dB
    };

    SceneTrace trace_scene(const geoscene::Scene &scene, const PropagationConfig &cfg, int jobs = 0);

    // Rescales paths traced with an isotropic BS antenna to another pattern. Geometry is antenna
    // independent, so this equals tracing again with the other pattern.
    SceneTrace apply_antenna(const SceneTrace &isotropic, mimo::AntennaPattern pattern, double boresight_azimuth_rad);

    // cell_ix,cell_iy,path_index,re_alpha,im_alpha,tau_s,aod_az,aod_zen,aoa_az,aoa_zen,bounces
    void write_paths_csv(const SceneTrace &trace, std::ostream &out);
}
