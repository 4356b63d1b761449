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

#include "radiomap/mimo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace radiomap::mimo
{
    namespace
    {
        constexpr double kRadToDeg = 180.0 / std::numbers::pi;

        double wrap_pi(double a)
        {
            a = std::remainder(a, 2.0 * std::numbers::pi);
            return a;
        }
    }

    double directional_gain_db(double azimuth_off_boresight_rad, double zenith_off_boresight_rad)
    {
        double az = azimuth_off_boresight_rad * kRadToDeg / kHorizontalHpbwDeg;
        double zen = zenith_off_boresight_rad * kRadToDeg / kVerticalHpbwDeg;
        return kBoresightGainDb - std::min(12.0 * az * az + 12.0 * zen * zen, kMaxAttenuationDb);
    }

    double antenna_gain_db(AntennaPattern pattern, double azimuth_off_boresight_rad, double zenith_off_boresight_rad)
    {
        if (pattern == AntennaPattern::Isotropic)
            return 0.0;
        return directional_gain_db(azimuth_off_boresight_rad, zenith_off_boresight_rad);
    }

    double antenna_gain_db(AntennaPattern pattern, double boresight_azimuth_rad, const Direction &d)
    {
        if (pattern == AntennaPattern::Isotropic)
            return 0.0;
        return directional_gain_db(wrap_pi(d.azimuth_rad - boresight_azimuth_rad),
                                   d.zenith_rad - std::numbers::pi / 2.0);
    }

    void ArrayConfig::validate() const
    {
        if (n_t < 1 || n_r < 1)
            throw std::invalid_argument("array needs at least one element per side");
        if (!(element_spacing_wavelengths > 0.0))
            throw std::invalid_argument("element spacing must be positive");
    }

    void OfdmConfig::validate() const
    {
        if (n_subcarriers < 1 || decimation < 1)
            throw std::invalid_argument("OFDM config needs n_subcarriers >= 1 and decimation >= 1");
        if (!(subcarrier_spacing_hz > 0.0) || !(bandwidth_hz > 0.0))
            throw std::invalid_argument("OFDM bandwidth and subcarrier spacing must be positive");
        if (n_subcarriers * subcarrier_spacing_hz > 1.05 * bandwidth_hz)
            throw std::invalid_argument("occupied subcarriers exceed the channel bandwidth");
    }

    CVector array_response(const ArrayConfig &cfg, ArraySide side, double azimuth_rad, double zenith_rad)
    {
        const int n = side == ArraySide::Tx ? cfg.n_t : cfg.n_r;
        const double step = 2.0 * std::numbers::pi * cfg.element_spacing_wavelengths * std::sin(zenith_rad) *
                            std::sin(azimuth_rad);
        CVector a(n);
        for (int m = 0; m < n; ++m)
            a(m) = std::polar(1.0, step * m);
        return a;
    }

    ChannelTensor assemble_channel(std::span<const MultipathComponent> paths, const ArrayConfig &array,
                                   const OfdmConfig &ofdm)
    {
        array.validate();
        ofdm.validate();
        const int count = ofdm.evaluated_count();

        ChannelTensor out;
        out.matrices.assign(count, CMatrix::Zero(array.n_r, array.n_t));
        out.offsets_hz.resize(count);
        for (int k = 0; k < count; ++k)
            out.offsets_hz[k] = ofdm.evaluated_offset_hz(k);

        for (const auto &p : paths)
        {
            CMatrix outer = array_response(array, ArraySide::Rx, p.aoa.azimuth_rad, p.aoa.zenith_rad) *
                            array_response(array, ArraySide::Tx, p.aod.azimuth_rad, p.aod.zenith_rad).adjoint();
            for (int k = 0; k < count; ++k)
            {
                Complex coeff = p.alpha * std::polar(1.0, -2.0 * std::numbers::pi * out.offsets_hz[k] * p.tau_s);
                out.matrices[k] += coeff * outer;
            }
        }
        return out;
    }
}
