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
#include "radiomap/sampling.hpp"

#include <span>
#include <vector>

namespace radiomap::baseline
{
    struct ScatterPoint
    {
        double x = 0.0; // meters
        double y = 0.0;
        double value = 0.0;
    };

    // Bilinear value at (x, y) in meters, in double precision; points outside the lattice hull
    // take the value of the nearest node.
    double bilinear_value(const sampling::Lattice &lattice, std::span<const double> node_values, double x, double y);

    // Bilinear interpolation over the (possibly non-uniform) rectilinear lattice xs x ys.
    // node_values[j * gx + i] belongs to (xs[i], ys[j]). Cells outside the lattice hull take the
    // value of the nearest node.
    MetricMap linear_interpolate(const sampling::Lattice &lattice, std::span<const double> node_values,
                                 const GridSpec &spec, MetricKind kind = MetricKind::Throughput);

    // Throughput reconstruction from UniformGrid samples; every lattice node must have a sample
    // at its measured cell.
    MetricMap linear_interpolate(const std::vector<sampling::Sample> &samples, const sampling::Lattice &lattice,
                                 const GridSpec &spec);

    // Unweighted mean of the k nearest points (Euclidean, cell centres); equal distances are
    // resolved by point order.
    MetricMap knn_regress(std::span<const ScatterPoint> points, const GridSpec &spec, int k,
                          MetricKind kind = MetricKind::Throughput);

    MetricMap knn_regress(const std::vector<sampling::Sample> &samples, const GridSpec &spec, int k = 5);

    std::vector<ScatterPoint> throughput_points(const std::vector<sampling::Sample> &samples, const GridSpec &spec);
}
