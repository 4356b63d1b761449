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

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace radiomap::evalmetrics
{
    // Box-plot statistics of absolute errors. Quantiles interpolate linearly between order
    // statistics (position (n - 1) p); whiskers sit at the most extreme errors inside
    // [q1 - 1.5 iqr, q3 + 1.5 iqr].
    struct ErrorReport
    {
        double rmse = 0.0;
        double mean_abs = 0.0;
        double median_abs = 0.0;
        double q1 = 0.0;
        double q3 = 0.0;
        double iqr = 0.0;
        double whisker_low = 0.0;
        double whisker_high = 0.0;
        std::size_t outlier_count = 0;
        double max_abs = 0.0;
        double p99_abs = 0.0;
        std::size_t n_cells = 0;
    };

    // Absolute errors over mask cells, optionally skipping sampled cells.
    std::vector<double> absolute_errors(const MetricMap &pred, const MetricMap &truth, const CellMask &mask,
                                        const std::vector<sampling::Sample> *exclude = nullptr);

    // Statistics over an already pooled error set (e.g. several scenes).
    ErrorReport summarize(std::vector<double> abs_errors);

    ErrorReport error_stats(const MetricMap &pred, const MetricMap &truth, const CellMask &mask,
                            const std::vector<sampling::Sample> *exclude = nullptr);

    // Linear-interpolation quantile of a sorted sample.
    double quantile_sorted(std::span<const double> sorted, double p);

    struct ErrorLocation
    {
        int ix = 0;
        int iy = 0;
        double abs_error = 0.0;
    };

    // The ceil(fraction * n) masked cells with the largest errors, descending, ties row-major.
    std::vector<ErrorLocation> top_error_locations(const MetricMap &pred, const MetricMap &truth, const CellMask &mask,
                                                   double fraction = 0.05);

    struct CdfPoint
    {
        double abs_error = 0.0;
        double cumulative_fraction = 0.0;
    };

    // One point per distinct error value, ascending; the last fraction is 1.
    std::vector<CdfPoint> error_cdf(const MetricMap &pred, const MetricMap &truth, const CellMask &mask);
    std::vector<CdfPoint> error_cdf(std::vector<double> abs_errors);

    std::string to_json(const ErrorReport &report);
    void write_cdf_csv(const std::vector<CdfPoint> &cdf, std::ostream &out);
    void write_top_errors_csv(const std::vector<ErrorLocation> &top, std::ostream &out);
}
