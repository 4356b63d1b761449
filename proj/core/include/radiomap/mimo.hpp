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

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace radiomap
{
    using Complex = std::complex<double>;
    using CMatrix = Eigen::MatrixXcd;
    using CVector = Eigen::VectorXcd;

    // Direction in radians. Zenith is measured from +z (0 = straight up, pi/2 = horizon).
    struct Direction
    {
        double azimuth_rad = 0.0;
        double zenith_rad = 0.0;
    };

    // One propagation path between BS and UE.
    struct MultipathComponent
    {
        Complex alpha;            // linear amplitude incl. TX antenna gain and reflection losses
        double tau_s = 0.0;       // total path length / c
        Direction aod;            // departure at the BS
        Direction aoa;            // arrival at the UE
        int bounce_count = 0;     // wall and ground reflections
        double length_m = 0.0;    // unfolded path length
        bool ground_bounce = false;
        std::array<int, 3> walls{-1, -1, -1}; // reflecting wall indices in order, -1 when unused
    };

    inline constexpr double kSpeedOfLight = 299792458.0;
}

namespace radiomap::mimo
{
    enum class AntennaPattern
    {
        Isotropic,
        Directional
    };

    inline constexpr double kBoresightGainDb = 6.3;
    inline constexpr double kHorizontalHpbwDeg = 65.0;
    inline constexpr double kVerticalHpbwDeg = 8.0;
    inline constexpr double kMaxAttenuationDb = 30.0;

    // Parabolic-in-dB sector pattern: 6.3 - min(12 (az/65)^2 + 12 (zen/8)^2, 30), angles in degrees
    // off boresight.
    double directional_gain_db(double azimuth_off_boresight_rad, double zenith_off_boresight_rad);

    double antenna_gain_db(AntennaPattern pattern, double azimuth_off_boresight_rad, double zenith_off_boresight_rad);

    // Gain in the direction `d` of an antenna whose boresight is horizontal at azimuth `boresight_azimuth_rad`.
    double antenna_gain_db(AntennaPattern pattern, double boresight_azimuth_rad, const Direction &d);

    // Half-wavelength ULA along the local y axis.
    struct ArrayConfig
    {
        int n_t = 4;
        int n_r = 4;
        double element_spacing_wavelengths = 0.5;

        void validate() const;
    };

    struct OfdmConfig
    {
        double bandwidth_hz = 100e6;
        double subcarrier_spacing_hz = 60e3;
        int n_subcarriers = 1620;
        int decimation = 12; // evaluate every decimation-th subcarrier

        void validate() const;
        int evaluated_count() const { return (n_subcarriers + decimation - 1) / decimation; }
        // Baseband offset of the k-th evaluated subcarrier.
        double evaluated_offset_hz(int k) const
        {
            return (static_cast<double>(k) * decimation - n_subcarriers / 2.0) * subcarrier_spacing_hz;
        }
    };

    enum class ArraySide
    {
        Tx,
        Rx
    };

    // Element m: exp(j 2 pi spacing m sin(zenith) sin(azimuth)).
    CVector array_response(const ArrayConfig &cfg, ArraySide side, double azimuth_rad, double zenith_rad);

    struct ChannelTensor
    {
        std::vector<CMatrix> matrices;   // H_n, shape (n_r, n_t)
        std::vector<double> offsets_hz;  // f_n per evaluated subcarrier
    };

    // H_n = sum_l alpha_l exp(-j 2 pi f_n tau_l) a_r(aoa_l) a_t(aod_l)^H at every evaluated subcarrier.
    // Transmit power is not part of H.
    ChannelTensor assemble_channel(std::span<const MultipathComponent> paths, const ArrayConfig &array,
                                   const OfdmConfig &ofdm);
}
