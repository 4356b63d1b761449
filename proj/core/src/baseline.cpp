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

#include "radiomap/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace radiomap::baseline
{
    namespace
    {
        // Index i with axis[i] <= v <= axis[i + 1]; axis is non-decreasing with >= 2 entries.
        std::size_t bracket(const std::vector<double> &axis, double v)
        {
            auto it = std::upper_bound(axis.begin(), axis.end(), v);
            auto i = static_cast<std::size_t>(std::distance(axis.begin(), it));
            return std::clamp<std::size_t>(i == 0 ? 0 : i - 1, 0, axis.size() - 2);
        }
    }

    std::vector<ScatterPoint> throughput_points(const std::vector<sampling::Sample> &samples, const GridSpec &spec)
    {
        std::vector<ScatterPoint> points;
        points.reserve(samples.size());
        for (const auto &s : samples)
            points.push_back({spec.center_x(s.ix), spec.center_y(s.iy), s.tp_mbps});
        return points;
    }

    namespace
    {
        void check_lattice(const sampling::Lattice &lattice, std::span<const double> node_values)
        {
            const auto gx = static_cast<std::size_t>(lattice.gx), gy = static_cast<std::size_t>(lattice.gy);
            if (lattice.gx < 2 || lattice.gy < 2)
                throw std::invalid_argument("linear interpolation needs at least a 2x2 lattice of samples");
            if (node_values.size() != gx * gy || lattice.xs.size() != gx || lattice.ys.size() != gy)
                throw std::invalid_argument("lattice and node values disagree in size");
        }

        double bilinear_unchecked(const sampling::Lattice &lattice, std::span<const double> node_values, double x,
                                  double y)
        {
            const auto gx = static_cast<std::size_t>(lattice.gx), gy = static_cast<std::size_t>(lattice.gy);
            auto node = [&](std::size_t i, std::size_t j) { return node_values[j * gx + i]; };
            const auto &xs = lattice.xs;
            const auto &ys = lattice.ys;
            if (x >= xs.front() && x <= xs.back() && y >= ys.front() && y <= ys.back())
            {
                std::size_t i = bracket(xs, x), j = bracket(ys, y);
                double wx = xs[i + 1] > xs[i] ? (x - xs[i]) / (xs[i + 1] - xs[i]) : 0.0;
                double wy = ys[j + 1] > ys[j] ? (y - ys[j]) / (ys[j + 1] - ys[j]) : 0.0;
                return (1.0 - wy) * ((1.0 - wx) * node(i, j) + wx * node(i + 1, j)) +
                       wy * ((1.0 - wx) * node(i, j + 1) + wx * node(i + 1, j + 1));
            }
            double best = std::numeric_limits<double>::infinity(), value = 0.0;
            for (std::size_t j = 0; j < gy; ++j)
                for (std::size_t i = 0; i < gx; ++i)
                {
                    double dx = xs[i] - x, dy = ys[j] - y;
                    double d2 = dx * dx + dy * dy;
                    if (d2 < best)
                    {
                        best = d2;
                        value = node(i, j);
                    }
                }
            return value;
        }
    }

    double bilinear_value(const sampling::Lattice &lattice, std::span<const double> node_values, double x, double y)
    {
        check_lattice(lattice, node_values);
        return bilinear_unchecked(lattice, node_values, x, y);
    }

    MetricMap linear_interpolate(const sampling::Lattice &lattice, std::span<const double> node_values,
                                 const GridSpec &spec, MetricKind kind)
    {
        check_lattice(lattice, node_values);
        MetricMap out(spec, kind, 0.0f);
        for (int iy = 0; iy < spec.n_y; ++iy)
            for (int ix = 0; ix < spec.n_x; ++ix)
                out.at(ix, iy) =
                    static_cast<float>(bilinear_unchecked(lattice, node_values, spec.center_x(ix), spec.center_y(iy)));
        return out;
    }

    MetricMap linear_interpolate(const std::vector<sampling::Sample> &samples, const sampling::Lattice &lattice,
                                 const GridSpec &spec)
    {
        if (samples.size() < 4)
            throw std::invalid_argument("linear interpolation needs at least 4 samples");
        std::map<CellIndex, double> by_cell;
        for (const auto &s : samples)
            by_cell[{s.ix, s.iy}] = s.tp_mbps;
        std::vector<double> values;
        values.reserve(lattice.measured.size());
        for (const auto &c : lattice.measured)
        {
            auto it = by_cell.find(c);
            if (it == by_cell.end())
                throw std::invalid_argument("no sample at lattice cell (" + std::to_string(c.ix) + ", " +
                                            std::to_string(c.iy) + ")");
            values.push_back(it->second);
        }
        return linear_interpolate(lattice, values, spec, MetricKind::Throughput);
    }

    MetricMap knn_regress(std::span<const ScatterPoint> points, const GridSpec &spec, int k, MetricKind kind)
    {
        if (k < 1)
            throw std::invalid_argument("k must be at least 1");
        if (static_cast<std::size_t>(k) > points.size())
            throw std::invalid_argument("k = " + std::to_string(k) + " exceeds the sample count " +
                                        std::to_string(points.size()));

        MetricMap out(spec, kind, 0.0f);
        std::vector<std::pair<double, std::size_t>> ranked(points.size());
        for (int iy = 0; iy < spec.n_y; ++iy)
        {
            const double y = spec.center_y(iy);
            for (int ix = 0; ix < spec.n_x; ++ix)
            {
                const double x = spec.center_x(ix);
                for (std::size_t p = 0; p < points.size(); ++p)
                {
                    double dx = points[p].x - x, dy = points[p].y - y;
                    ranked[p] = {dx * dx + dy * dy, p};
                }
                std::partial_sort(ranked.begin(), ranked.begin() + k, ranked.end());
                double sum = 0.0;
                for (int n = 0; n < k; ++n)
                    sum += points[ranked[n].second].value;
                out.at(ix, iy) = static_cast<float>(sum / k);
            }
        }
        return out;
    }

    MetricMap knn_regress(const std::vector<sampling::Sample> &samples, const GridSpec &spec, int k)
    {
        auto points = throughput_points(samples, spec);
        return knn_regress(points, spec, k, MetricKind::Throughput);
    }
}
