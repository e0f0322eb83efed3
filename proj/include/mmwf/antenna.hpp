// SPDX-License-Identifier: Apache-2.0
//
// mmwfading  C++ library and CLI for 28 GHz ultrawideband small-scale
// fading synthesis and analysis over local-area linear tracks
// Copyright (C) 2026 mmwfading contributors
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

#ifndef MMWF_ANTENNA_HPP
#define MMWF_ANTENNA_HPP

#include <cmath>
#include <stdexcept>

#include "mmwf/angle.hpp"

namespace mmwf
{

// Relative sidelobe floor of the main-lobe pattern approximation.
inline constexpr double antenna_pattern_floor_db = -30.0;

// Directional horn pattern: Gaussian main-lobe power gain
//   G(daz, del) = G0 * exp(-4 ln2 * ((daz/HPBW_az)^2 + (del/HPBW_el)^2)),
// floored at -30 dB relative to boresight. Gain drops by exactly 3.01 dB at
// an offset of HPBW/2 on either principal cut.
struct AntennaPattern
{
    AntennaPattern(double boresight_gain_dbi_, double hpbw_azimuth_deg_, double hpbw_elevation_deg_)
        : boresight_gain_dbi(boresight_gain_dbi_),
          hpbw_azimuth_deg(hpbw_azimuth_deg_),
          hpbw_elevation_deg(hpbw_elevation_deg_)
    {
        if (!(hpbw_azimuth_deg > 0.0) || !(hpbw_elevation_deg > 0.0))
            throw std::invalid_argument("AntennaPattern: beamwidths must be positive");
    }

    double boresight_gain_dbi;
    double hpbw_azimuth_deg;
    double hpbw_elevation_deg;

    // Power gain relative to boresight, in dB; <= 0, floored at -30 dB.
    double relative_gain_db(double offset_az_deg, double offset_el_deg) const
    {
        // 10*log10(exp(-4 ln2 q)) = -(40 ln2 / ln10) q
        constexpr double scale = 12.041199826559248; // 40 ln2 / ln10
        double qa = offset_az_deg / hpbw_azimuth_deg;
        double qe = offset_el_deg / hpbw_elevation_deg;
        double rel = -scale * (qa * qa + qe * qe);
        return rel < antenna_pattern_floor_db ? antenna_pattern_floor_db : rel;
    }

    double power_gain_dbi(double offset_az_deg, double offset_el_deg) const
    {
        return boresight_gain_dbi + relative_gain_db(offset_az_deg, offset_el_deg);
    }

    // |g| on the linear voltage scale
    double amplitude_gain(double offset_az_deg, double offset_el_deg) const
    {
        return std::pow(10.0, power_gain_dbi(offset_az_deg, offset_el_deg) / 20.0);
    }

    double amplitude_gain(const AngleVector& pointing, const AngleVector& direction) const
    {
        return amplitude_gain(wrap_azimuth_offset_deg(pointing.azimuth_deg, direction.azimuth_deg),
                              pointing.elevation_deg - direction.elevation_deg);
    }
};

} // namespace mmwf

#endif
