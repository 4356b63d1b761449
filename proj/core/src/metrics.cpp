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

#include "radiomap/metrics.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>

namespace radiomap::evalmetrics
{
    std::vector<double> absolute_errors(const MetricMap &pred, const MetricMap &truth, const CellMask &mask,
                                        const std::vector<sampling::Sample> *exclude)
    {
        const auto &spec = truth.spec();
        if (!(pred.spec().n_x == spec.n_x && pred.spec().n_y == spec.n_y) || mask.n_x() != spec.n_x ||
            mask.n_y() != spec.n_y)
            throw std::invalid_argument("prediction, truth and mask must share one grid");
        std::set<CellIndex> skip;
        if (exclude)
            for (const auto &s : *exclude)
                skip.insert({s.ix, s.iy});

        std::vector<double> errors;
        for (std::size_t i = 0; i < spec.cell_count(); ++i)
        {
            if (!mask[i] || (!skip.empty() && skip.count(spec.cell_of(i))))
                continue;
            errors.push_back(std::abs(static_cast<double>(pred[i]) - static_cast<double>(truth[i])));
        }
        return errors;
    }

    double quantile_sorted(std::span<const double> sorted, double p)
    {
        if (sorted.empty())
            throw std::invalid_argument("quantile of an empty set");
        double pos = (static_cast<double>(sorted.size()) - 1.0) * p;
        auto lo = static_cast<std::size_t>(std::floor(pos));
        auto hi = std::min(lo + 1, sorted.size() - 1);
        double frac = pos - static_cast<double>(lo);
        return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
    }

    ErrorReport summarize(std::vector<double> abs_errors)
    {
        if (abs_errors.empty())
            throw std::invalid_argument("error statistics need at least one evaluated cell");
        std::sort(abs_errors.begin(), abs_errors.end());

        ErrorReport r;
        r.n_cells = abs_errors.size();
        double sum = 0.0, sum_sq = 0.0;
        for (double e : abs_errors)
        {
            sum += e;
            sum_sq += e * e;
        }
        r.mean_abs = sum / static_cast<double>(r.n_cells);
        r.rmse = std::sqrt(sum_sq / static_cast<double>(r.n_cells));
        r.q1 = quantile_sorted(abs_errors, 0.25);
        r.median_abs = quantile_sorted(abs_errors, 0.5);
        r.q3 = quantile_sorted(abs_errors, 0.75);
        r.p99_abs = quantile_sorted(abs_errors, 0.99);
        r.iqr = r.q3 - r.q1;
        r.max_abs = abs_errors.back();

        const double fence_low = r.q1 - 1.5 * r.iqr, fence_high = r.q3 + 1.5 * r.iqr;
        r.whisker_low = *std::lower_bound(abs_errors.begin(), abs_errors.end(), fence_low);
        r.whisker_high = *(std::upper_bound(abs_errors.begin(), abs_errors.end(), fence_high) - 1);
        for (double e : abs_errors)
            if (e < fence_low || e > fence_high)
                ++r.outlier_count;
        return r;
    }

    ErrorReport error_stats(const MetricMap &pred, const MetricMap &truth, const CellMask &mask,
                            const std::vector<sampling::Sample> *exclude)
    {
        return summarize(absolute_errors(pred, truth, mask, exclude));
    }

    std::vector<ErrorLocation> top_error_locations(const MetricMap &pred, const MetricMap &truth, const CellMask &mask,
                                                   double fraction)
    {
        if (!(fraction > 0.0 && fraction <= 1.0))
            throw std::invalid_argument("fraction must be in (0, 1]");
        const auto &spec = truth.spec();
        std::vector<ErrorLocation> all;
        for (std::size_t i = 0; i < spec.cell_count(); ++i)
        {
            if (!mask[i])
                continue;
            auto c = spec.cell_of(i);
            all.push_back({c.ix, c.iy, std::abs(static_cast<double>(pred[i]) - static_cast<double>(truth[i]))});
        }
        auto count = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(all.size()) - 1e-9));
        count = std::min(count, all.size());
        std::stable_sort(all.begin(), all.end(),
                         [](const ErrorLocation &a, const ErrorLocation &b) { return a.abs_error > b.abs_error; });
        all.resize(count);
        return all;
    }

    std::vector<CdfPoint> error_cdf(std::vector<double> abs_errors)
    {
        if (abs_errors.empty())
            throw std::invalid_argument("CDF of an empty error set");
        std::sort(abs_errors.begin(), abs_errors.end());
        std::vector<CdfPoint> cdf;
        const auto n = static_cast<double>(abs_errors.size());
        for (std::size_t i = 0; i < abs_errors.size(); ++i)
        {
            if (i + 1 < abs_errors.size() && abs_errors[i + 1] == abs_errors[i])
                continue;
            cdf.push_back({abs_errors[i], static_cast<double>(i + 1) / n});
        }
        return cdf;
    }

    std::vector<CdfPoint> error_cdf(const MetricMap &pred, const MetricMap &truth, const CellMask &mask)
    {
        return error_cdf(absolute_errors(pred, truth, mask));
    }

    std::string to_json(const ErrorReport &r)
    {
        nlohmann::ordered_json j;
        j["rmse"] = r.rmse;
        j["mean_abs"] = r.mean_abs;
        j["median_abs"] = r.median_abs;
        j["q1"] = r.q1;
        j["q3"] = r.q3;
        j["iqr"] = r.iqr;
        j["whisker_low"] = r.whisker_low;
        j["whisker_high"] = r.whisker_high;
        j["outlier_count"] = r.outlier_count;
        j["max_abs"] = r.max_abs;
        j["p99_abs"] = r.p99_abs;
        j["n_cells"] = r.n_cells;
        return j.dump(2);
    }

    void write_cdf_csv(const std::vector<CdfPoint> &cdf, std::ostream &out)
    {
        out << "abs_error,cumulative_fraction\n";
        char line[96];
        for (const auto &p : cdf)
        {
            std::snprintf(line, sizeof(line), "%.9g,%.9g\n", p.abs_error, p.cumulative_fraction);
            out << line;
        }
    }

    void write_top_errors_csv(const std::vector<ErrorLocation> &top, std::ostream &out)
    {
        out << "ix,iy,abs_error\n";
        char line[96];
        for (const auto &e : top)
        {
            std::snprintf(line, sizeof(line), "%d,%d,%.9g\n", e.ix, e.iy, e.abs_error);
            out << line;
        }
    }
}
