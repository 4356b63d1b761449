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

// Rank and CQI selection for a MIMO-OFDM link and the resulting throughput.
//
// Per UE location: the transmit autocorrelation R = mean_n H_n^H H_n over a subcarrier group is
// eigendecomposed; each candidate rank v splits the transmit power equally over the v strongest
// eigenmodes, the per-layer SINRs are mapped to a mean mutual information, and the highest CQI
// whose spectral efficiency does not exceed it is chosen. The (v, CQI) pair with the largest
// v * SE(CQI) wins, ties going to the smaller rank.

#pragma once

#include "radiomap/grid.hpp"
#include "radiomap/hermitian.hpp"
#include "radiomap/mimo.hpp"
#include "radiomap/raytrace.hpp"

#include <array>
#include <span>
#include <vector>

namespace radiomap::linkadapt
{
    struct CqiTableEntry
    {
        int index = 0;
        int modulation_order = 0; // Q; 0 for the out-of-range entry
        double code_rate_x1024 = 0.0;
        double spectral_efficiency = 0.0; // bits/s/Hz as tabulated
    };

    class CqiTable
    {
    public:
        // 3GPP TS 38.214 Table 5.2.2.1-3 (up to 256QAM).
        static const CqiTable &nr_256qam();

        const CqiTableEntry &operator[](int index) const { return entries_.at(static_cast<std::size_t>(index)); }
        std::span<const CqiTableEntry> entries() const { return entries_; }
        int max_index() const { return static_cast<int>(entries_.size()) - 1; }

        // Largest index >= 1 with SE <= mutual_information, or 0.
        int highest_supported(double mutual_information) const;

    private:
        explicit CqiTable(std::array<CqiTableEntry, 16> entries) : entries_(entries) {}
        std::array<CqiTableEntry, 16> entries_;
    };

    struct RadioBudget
    {
        double tx_power_dbm = 40.0;
        double noise_dbm = -93.98;
        int n_re_per_symbol = 1620;
        double symbol_duration_s = 1e-3;

        void validate() const;
    };

    struct LinkReport
    {
        int ri = 1;
        int cqi = 0;
        std::vector<double> layer_sinrs_db; // chosen rank only; -inf for a zero gain
        double spectral_efficiency = 0.0;   // ri * SE(cqi)
        double throughput_mbps = 0.0;
    };

    // Half-open range of evaluated-subcarrier indices.
    struct SubcarrierGroup
    {
        int begin = 0;
        int end = 0;
    };

    // R = (1/|G|) sum_{n in G} H_n^H H_n.
    CMatrix autocorrelation(const mimo::ChannelTensor &channel, SubcarrierGroup group);
    CMatrix autocorrelation(const mimo::ChannelTensor &channel); // all evaluated subcarriers

    // Same quantity computed straight from the path list: the subcarrier average of
    // exp(-j 2 pi f_n (tau_m - tau_l)) is a geometric series with a closed form, so the cost is
    // O(L^2 n_t^2) instead of O(N L n_r n_t).
    CMatrix autocorrelation_from_paths(std::span<const MultipathComponent> paths, const mimo::ArrayConfig &array,
                                       const mimo::OfdmConfig &ofdm, SubcarrierGroup group);

    // Eq.-style throughput: 1e-6 * v * log2(Q) * R * N_RE / T_s Mbps; 0 for CQI 0.
    double throughput_mbps(int ri, int cqi, const RadioBudget &budget, const CqiTable &table = CqiTable::nr_256qam());

    // `eigenvalues` descending, one entry per transmit eigenmode; ranks 1..min(size, max_rank).
    LinkReport select_ri_cqi(std::span<const double> eigenvalues, const RadioBudget &budget,
                             const CqiTable &table = CqiTable::nr_256qam(), int max_rank = 4);

    // Subband variant: mutual information per rank is averaged over the groups before the CQI
    // lookup. With a single group this is select_ri_cqi.
    LinkReport select_ri_cqi_subbands(std::span<const std::vector<double>> group_eigenvalues,
                                      const RadioBudget &budget, const CqiTable &table = CqiTable::nr_256qam(),
                                      int max_rank = 4);

    struct LinkOptions
    {
        int subband_size = 0; // evaluated subcarriers per group; 0 = one wideband group
        int jobs = 0;
    };

    // Descending eigenvalues of R for every cell and group (empty for cells without paths).
    struct EigenTable
    {
        GridSpec spec;
        int max_rank = 4;
        std::vector<std::vector<std::vector<double>>> cells; // [cell][group][mode]
    };

    EigenTable compute_eigen_table(const raytrace::SceneTrace &trace, const mimo::ArrayConfig &array,
                                   const mimo::OfdmConfig &ofdm, const LinkOptions &options = {});

    struct LinkMaps
    {
        MetricMap ri;
        MetricMap cqi;
        MetricMap throughput;
    };

    // Indoor cells and cells without paths: RI 1, CQI 0, throughput 0.
    LinkMaps link_maps_from_eigen(const EigenTable &eigen, const RadioBudget &budget,
                                  const CqiTable &table = CqiTable::nr_256qam());

    LinkMaps link_map(const geoscene::Scene &scene, const raytrace::PropagationConfig &cfg,
                      const mimo::ArrayConfig &array, const mimo::OfdmConfig &ofdm, const RadioBudget &budget,
                      const LinkOptions &options = {});
}
