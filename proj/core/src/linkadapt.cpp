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

#include "radiomap/linkadapt.hpp"
#include "radiomap/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace radiomap::linkadapt
{
    namespace
    {
        double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

        // (1/N) sum_{i<N} exp(-j 2 pi (f0 + i step) delta)
        Complex mean_phasor(double f0, double step, int count, double delta)
        {
            const double theta = -2.0 * std::numbers::pi * delta;
            const Complex q = std::polar(1.0, theta * step);
            const Complex one_minus_q = 1.0 - q;
            Complex sum;
            if (std::abs(one_minus_q) < 1e-9)
            {
                for (int i = 0; i < count; ++i)
                    sum += std::polar(1.0, theta * i * step);
            }
            else
            {
                sum = (1.0 - std::polar(1.0, theta * step * count)) / one_minus_q;
            }
            return std::polar(1.0, theta * f0) * sum / static_cast<double>(count);
        }

        std::vector<SubcarrierGroup> make_groups(int evaluated, int subband_size)
        {
            std::vector<SubcarrierGroup> groups;
            if (subband_size <= 0 || subband_size >= evaluated)
            {
                groups.push_back({0, evaluated});
                return groups;
            }
            for (int b = 0; b < evaluated; b += subband_size)
                groups.push_back({b, std::min(evaluated, b + subband_size)});
            return groups;
        }
    }

    const CqiTable &CqiTable::nr_256qam()
    {
        static const CqiTable table({{
            {0, 0, 0, 0.0},
            {1, 4, 78, 0.1523},
            {2, 4, 193, 0.3770},
            {3, 4, 449, 0.8770},
            {4, 16, 378, 1.4766},
            {5, 16, 490, 1.9141},
            {6, 16, 616, 2.4063},
            {7, 64, 466, 2.7305},
            {8, 64, 567, 3.3223},
            {9, 64, 666, 3.9023},
            {10, 64, 772, 4.5234},
            {11, 64, 873, 5.1152},
            {12, 256, 711, 5.5547},
            {13, 256, 797, 6.2266},
            {14, 256, 885, 6.9141},
            {15, 256, 948, 7.4063},
        }});
        return table;
    }

    int CqiTable::highest_supported(double mutual_information) const
    {
        int best = 0;
        for (int q = 1; q <= max_index(); ++q)
            if (entries_[q].spectral_efficiency <= mutual_information)
                best = q;
        return best;
    }

    void RadioBudget::validate() const
    {
        if (!(tx_power_dbm > noise_dbm))
            throw std::invalid_argument("transmit power must exceed the noise level");
        if (n_re_per_symbol < 1 || !(symbol_duration_s > 0.0))
            throw std::invalid_argument("resource element count and symbol duration must be positive");
    }

    CMatrix autocorrelation(const mimo::ChannelTensor &channel, SubcarrierGroup group)
    {
        if (group.begin < 0 || group.end > static_cast<int>(channel.matrices.size()) || group.begin >= group.end)
            throw std::invalid_argument("autocorrelation: empty or out-of-range subcarrier group");
        const auto &first = channel.matrices[group.begin];
        CMatrix r = CMatrix::Zero(first.cols(), first.cols());
        for (int n = group.begin; n < group.end; ++n)
            r.noalias() += channel.matrices[n].adjoint() * channel.matrices[n];
        return r / static_cast<double>(group.end - group.begin);
    }

    CMatrix autocorrelation(const mimo::ChannelTensor &channel)
    {
        return autocorrelation(channel, {0, static_cast<int>(channel.matrices.size())});
    }

    CMatrix autocorrelation_from_paths(std::span<const MultipathComponent> paths, const mimo::ArrayConfig &array,
                                       const mimo::OfdmConfig &ofdm, SubcarrierGroup group)
    {
        if (group.begin < 0 || group.end > ofdm.evaluated_count() || group.begin >= group.end)
            throw std::invalid_argument("autocorrelation: empty or out-of-range subcarrier group");
        CMatrix r = CMatrix::Zero(array.n_t, array.n_t);
        if (paths.empty())
            return r;

        const std::size_t count = paths.size();
        std::vector<CVector> a_t(count), a_r(count);
        for (std::size_t l = 0; l < count; ++l)
        {
            a_t[l] = mimo::array_response(array, mimo::ArraySide::Tx, paths[l].aod.azimuth_rad, paths[l].aod.zenith_rad);
            a_r[l] = mimo::array_response(array, mimo::ArraySide::Rx, paths[l].aoa.azimuth_rad, paths[l].aoa.zenith_rad);
        }
        const double f0 = ofdm.evaluated_offset_hz(group.begin);
        const double step = ofdm.decimation * ofdm.subcarrier_spacing_hz;
        const int n = group.end - group.begin;

        // b_l = sum_m K_lm a_t,m; R = sum_l a_t,l b_l^H with K Hermitian in (l, m).
        for (std::size_t l = 0; l < count; ++l)
        {
            CVector weighted = CVector::Zero(array.n_t);
            for (std::size_t m = 0; m < count; ++m)
            {
                Complex k = std::conj(paths[l].alpha) * paths[m].alpha *
                            mean_phasor(f0, step, n, paths[m].tau_s - paths[l].tau_s) * a_r[l].dot(a_r[m]);
                weighted += k * a_t[m].conjugate();
            }
            r += a_t[l] * weighted.transpose();
        }
        return r;
    }

    double throughput_mbps(int ri, int cqi, const RadioBudget &budget, const CqiTable &table)
    {
        if (ri < 1 || ri > 4)
            throw std::out_of_range("rank indicator must be in [1, 4], got " + std::to_string(ri));
        if (cqi < 0 || cqi > table.max_index())
            throw std::out_of_range("CQI must be in [0, 15], got " + std::to_string(cqi));
        if (cqi == 0)
            return 0.0;
        const auto &e = table[cqi];
        return 1e-6 * ri * std::log2(static_cast<double>(e.modulation_order)) * (e.code_rate_x1024 / 1024.0) *
               budget.n_re_per_symbol / budget.symbol_duration_s;
    }

    LinkReport select_ri_cqi_subbands(std::span<const std::vector<double>> group_eigenvalues,
                                      const RadioBudget &budget, const CqiTable &table, int max_rank)
    {
        if (group_eigenvalues.empty())
            throw std::invalid_argument("select_ri_cqi: no eigenvalue groups");
        const std::size_t modes = group_eigenvalues.front().size();
        for (const auto &g : group_eigenvalues)
        {
            if (g.size() != modes)
                throw std::invalid_argument("select_ri_cqi: groups differ in mode count");
            for (double e : g)
                if (!(e >= 0.0))
                    throw std::invalid_argument("select_ri_cqi: eigenvalues must be non-negative");
        }
        const int ranks = std::min(static_cast<int>(modes), max_rank);
        const double snr_scale = db_to_linear(budget.tx_power_dbm) / db_to_linear(budget.noise_dbm);

        LinkReport best;
        double best_se = -1.0;
        for (int v = 1; v <= ranks; ++v)
        {
            double mi = 0.0;
            for (const auto &g : group_eigenvalues)
                for (int i = 0; i < v; ++i)
                    mi += std::log2(1.0 + snr_scale / v * g[i]);
            mi /= static_cast<double>(v) * group_eigenvalues.size();
            const int cqi = table.highest_supported(mi);
            const double se = v * table[cqi].spectral_efficiency;
            if (se > best_se)
            {
                best_se = se;
                best.ri = v;
                best.cqi = cqi;
                best.spectral_efficiency = se;
            }
        }
        if (ranks == 0)
        {
            best.ri = 1;
            best.cqi = 0;
            best.spectral_efficiency = 0.0;
        }

        best.layer_sinrs_db.clear();
        for (int i = 0; i < std::min(best.ri, ranks); ++i)
        {
            double sinr = 0.0;
            for (const auto &g : group_eigenvalues)
                sinr += snr_scale / best.ri * g[i];
            sinr /= static_cast<double>(group_eigenvalues.size());
            best.layer_sinrs_db.push_back(sinr > 0.0 ? 10.0 * std::log10(sinr)
                                                     : -std::numeric_limits<double>::infinity());
        }
        best.throughput_mbps = throughput_mbps(best.ri, best.cqi, budget, table);
        return best;
    }

    LinkReport select_ri_cqi(std::span<const double> eigenvalues, const RadioBudget &budget, const CqiTable &table,
                             int max_rank)
    {
        std::vector<std::vector<double>> groups{std::vector<double>(eigenvalues.begin(), eigenvalues.end())};
        return select_ri_cqi_subbands(groups, budget, table, max_rank);
    }

    EigenTable compute_eigen_table(const raytrace::SceneTrace &trace, const mimo::ArrayConfig &array,
                                   const mimo::OfdmConfig &ofdm, const LinkOptions &options)
    {
        array.validate();
        ofdm.validate();
        const auto groups = make_groups(ofdm.evaluated_count(), options.subband_size);

        EigenTable table;
        table.spec = trace.spec;
        table.max_rank = std::min(array.n_t, array.n_r);
        table.cells.resize(trace.paths.size());
        parallel_for(trace.paths.size(), options.jobs,
                     [&](std::size_t i)
                     {
                         const auto &paths = trace.paths[i];
                         if (paths.empty())
                             return;
                         auto &cell = table.cells[i];
                         cell.reserve(groups.size());
                         for (const auto &g : groups)
                         {
                             auto decomposition = eigendecompose_hermitian(autocorrelation_from_paths(paths, array, ofdm, g));
                             cell.emplace_back(decomposition.values.data(),
                                               decomposition.values.data() + decomposition.values.size());
                         }
                     });
        return table;
    }

    LinkMaps link_maps_from_eigen(const EigenTable &eigen, const RadioBudget &budget, const CqiTable &table)
    {
        budget.validate();
        LinkMaps maps{MetricMap(eigen.spec, MetricKind::RI, 1.0f), MetricMap(eigen.spec, MetricKind::CQI, 0.0f),
                      MetricMap(eigen.spec, MetricKind::Throughput, 0.0f)};
        for (std::size_t i = 0; i < eigen.cells.size(); ++i)
        {
            if (eigen.cells[i].empty())
                continue;
            auto report = select_ri_cqi_subbands(eigen.cells[i], budget, table, eigen.max_rank);
            maps.ri[i] = static_cast<float>(report.ri);
            maps.cqi[i] = static_cast<float>(report.cqi);
            maps.throughput[i] = static_cast<float>(report.throughput_mbps);
        }
        return maps;
    }

    LinkMaps link_map(const geoscene::Scene &scene, const raytrace::PropagationConfig &cfg,
                      const mimo::ArrayConfig &array, const mimo::OfdmConfig &ofdm, const RadioBudget &budget,
                      const LinkOptions &options)
    {
        auto trace = raytrace::trace_scene(scene, cfg, options.jobs);
        return link_maps_from_eigen(compute_eigen_table(trace, array, ofdm, options), budget);
    }
}
