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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace radiomap
{
    // Marks unsampled cells of a sparse map, both raw and after normalization.
    inline constexpr float kSentinel = -1.0f;

    // Default throughput normalization ceiling in Mbps.
    inline constexpr double kDefaultTpMax = 1900.0;

    inline constexpr double kPathGainFloorDb = -160.0;
    inline constexpr double kPathGainCeilDb = 0.0;

    struct CellIndex
    {
        int ix = 0; // column, x direction
        int iy = 0; // row, y direction

        auto operator<=>(const CellIndex &) const = default;
    };

    // Raster geometry. Cell (ix, iy) covers [ix*r, (ix+1)*r) x [iy*r, (iy+1)*r) with the
    // origin at the south-west corner; storage is row-major with rows along y.
    struct GridSpec
    {
        int n_x = 128;
        int n_y = 128;
        double resolution_m = 2.0;

        std::size_t cell_count() const { return static_cast<std::size_t>(n_x) * static_cast<std::size_t>(n_y); }
        double extent_x() const { return n_x * resolution_m; }
        double extent_y() const { return n_y * resolution_m; }
        bool contains(int ix, int iy) const { return ix >= 0 && iy >= 0 && ix < n_x && iy < n_y; }
        std::size_t linear(int ix, int iy) const { return static_cast<std::size_t>(iy) * n_x + ix; }
        CellIndex cell_of(std::size_t linear_index) const
        {
            return {static_cast<int>(linear_index % n_x), static_cast<int>(linear_index / n_x)};
        }
        double center_x(int ix) const { return (ix + 0.5) * resolution_m; }
        double center_y(int iy) const { return (iy + 0.5) * resolution_m; }

        // Simulation grids must be at least 8x8 with a positive resolution.
        void validate() const;

        bool operator==(const GridSpec &) const = default;
    };

    // Row-major dense grid; the common container behind maps, masks and gradient fields.
    template <typename T>
    class Grid
    {
    public:
        Grid() = default;
        Grid(int n_x, int n_y, T fill = T{})
            : n_x_(n_x), n_y_(n_y), values_(static_cast<std::size_t>(n_x) * n_y, fill) {}

        int n_x() const { return n_x_; }
        int n_y() const { return n_y_; }
        std::size_t size() const { return values_.size(); }

        T &at(int ix, int iy) { return values_[static_cast<std::size_t>(iy) * n_x_ + ix]; }
        const T &at(int ix, int iy) const { return values_[static_cast<std::size_t>(iy) * n_x_ + ix]; }
        T &operator[](std::size_t i) { return values_[i]; }
        const T &operator[](std::size_t i) const { return values_[i]; }

        std::vector<T> &values() { return values_; }
        const std::vector<T> &values() const { return values_; }

        bool operator==(const Grid &) const = default;

    private:
        int n_x_ = 0;
        int n_y_ = 0;
        std::vector<T> values_;
    };

    // true where a UE may be placed
    using CellMask = Grid<std::uint8_t>;

    enum class MetricKind
    {
        BuildingHeight,
        PathGainIso,
        PathGainDir,
        RI,
        CQI,
        Throughput
    };

    std::string_view to_string(MetricKind kind);
    MetricKind metric_kind_from_string(std::string_view name);

    // A named float32 grid over the area. Values are stored row-major (row = y, col = x).
    class MetricMap
    {
    public:
        MetricMap() = default;
        MetricMap(GridSpec spec, MetricKind kind, float fill = 0.0f);
        MetricMap(GridSpec spec, MetricKind kind, std::vector<float> values, bool sparse = false);

        const GridSpec &spec() const { return spec_; }
        MetricKind kind() const { return kind_; }
        bool sparse() const { return sparse_; }
        void set_sparse(bool sparse) { sparse_ = sparse; }

        float &at(int ix, int iy) { return values_[spec_.linear(ix, iy)]; }
        float at(int ix, int iy) const { return values_[spec_.linear(ix, iy)]; }
        float &operator[](std::size_t i) { return values_[i]; }
        float operator[](std::size_t i) const { return values_[i]; }
        std::span<float> values() { return values_; }
        std::span<const float> values() const { return values_; }

        bool is_sentinel(std::size_t i) const { return sparse_ && values_[i] == kSentinel; }

        // Throws InvariantError when any non-sentinel value is out of range for the kind.
        void validate(double tp_max = kDefaultTpMax) const;

        bool operator==(const MetricMap &) const = default;

    private:
        GridSpec spec_{};
        MetricKind kind_ = MetricKind::BuildingHeight;
        std::vector<float> values_;
        bool sparse_ = false;
    };

    struct ReadOptions
    {
        double resolution_m = 2.0; // NPY carries no resolution
        bool validate = true;
        double tp_max = kDefaultTpMax;
    };

    // NPY v1.0, '<f4', C order, shape (n_y, n_x).
    void write_grid(const MetricMap &map, const std::filesystem::path &path);

    // The sparse flag is inferred from the presence of the sentinel (never for height maps).
    MetricMap read_grid(const std::filesystem::path &path, MetricKind expected_kind, const ReadOptions &options = {});

    // Channel-major float stack, shape (channels, n_y, n_x).
    struct Tensor3
    {
        int channels = 0;
        int n_y = 0;
        int n_x = 0;
        std::vector<float> values;

        float at(int c, int iy, int ix) const
        {
            return values[(static_cast<std::size_t>(c) * n_y + iy) * n_x + ix];
        }
    };

    struct NormalizationParams
    {
        double tp_max = kDefaultTpMax;
        double height_max = 0.0; // <= 0 means: take the maximum of the building map in the stack
    };

    // Per-kind affine scaling into [0, 1]; sentinel cells of sparse maps pass through as -1.
    Tensor3 normalize_stack(std::span<const MetricMap> maps, const NormalizationParams &params = {});

    double normalize_value(MetricKind kind, double raw, double height_max, double tp_max);
    double denormalize_value(MetricKind kind, double normalized, double height_max, double tp_max);

    // Channel layouts expected by the learned predictors.
    inline constexpr MetricKind kStack5[] = {MetricKind::BuildingHeight, MetricKind::PathGainIso, MetricKind::RI,
                                             MetricKind::CQI, MetricKind::Throughput};
    inline constexpr MetricKind kStack3[] = {MetricKind::BuildingHeight, MetricKind::PathGainIso,
                                             MetricKind::Throughput};
}
