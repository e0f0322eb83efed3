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

#ifndef MMWF_TRACK_HPP
#define MMWF_TRACK_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmwf/units.hpp"

namespace mmwf
{

// Flags carried in track metadata when the generator had to repair or clip
// a requested correlation structure.
struct TrackWarnings
{
    bool eigenvalue_clipped = false;       // correlation matrix was not positive definite
    bool correlation_clipped = false;      // model correlation clipped into feasible range
    bool matcher_not_converged = false;    // window-matched calibration did not converge

    bool any() const { return eigenvalue_clipped || correlation_clipped || matcher_not_converged; }
};

// Matrix of binned path powers over (track position, excess delay bin), the
// unit of both measurement and synthesis. Entries at or below the noise
// floor carry a zero sentinel with a cleared validity bit so that matrix
// arithmetic stays finite.
struct SpatialTrackPdp
{
    SpatialTrackPdp() = default;

    SpatialTrackPdp(int n_positions_, int n_bins_, double step_m_, double wavelength_m_, double bin_width_s_,
                    double noise_floor_dbm_)
        : n_positions(n_positions_), n_bins(n_bins_), step_m(step_m_), wavelength_m(wavelength_m_),
          bin_width_s(bin_width_s_), noise_floor_dbm(noise_floor_dbm_),
          power_mw(static_cast<std::size_t>(n_positions_) * static_cast<std::size_t>(n_bins_), 0.0),
          valid_mask(static_cast<std::size_t>(n_positions_) * static_cast<std::size_t>(n_bins_), 0)
    {
        if (n_positions < 2)
            throw std::invalid_argument("SpatialTrackPdp: need at least 2 track positions");
        if (n_bins < 1)
            throw std::invalid_argument("SpatialTrackPdp: need at least 1 delay bin");
        if (!(step_m > 0.0))
            throw std::invalid_argument("SpatialTrackPdp: step must be positive");
        if (!(wavelength_m > 0.0))
            throw std::invalid_argument("SpatialTrackPdp: wavelength must be positive");
        if (!(bin_width_s > 0.0))
            throw std::invalid_argument("SpatialTrackPdp: bin width must be positive");
    }

    int n_positions = 0;
    int n_bins = 0;
    double step_m = 5.35e-3;
    double wavelength_m = 1.0707e-2;
    double bin_width_s = 2.5e-9;
    double noise_floor_dbm = -100.0;

    std::vector<double> power_mw;        // row-major [position][bin], 0 sentinel below floor
    std::vector<std::uint8_t> valid_mask;

    std::string environment = "-";  // LOS / NLOS / LOS-to-NLOS / -
    std::string polarization = "-"; // VV / VH / -
    std::optional<std::uint64_t> seed;
    TrackWarnings warnings;

    std::size_t index(int position, int bin) const
    {
        return static_cast<std::size_t>(position) * static_cast<std::size_t>(n_bins) + static_cast<std::size_t>(bin);
    }

    double at(int position, int bin) const { return power_mw[index(position, bin)]; }
    bool valid(int position, int bin) const { return valid_mask[index(position, bin)] != 0; }
    double noise_floor_mw() const { return dbm_to_mw(noise_floor_dbm); }
    double step_wavelengths() const { return step_m / wavelength_m; }

    // Applies the sentinel rule: powers at or below the noise floor are
    // stored as invalid zeros.
    void set_power(int position, int bin, double mw)
    {
        std::size_t i = index(position, bin);
        if (mw > noise_floor_mw())
        {
            power_mw[i] = mw;
            valid_mask[i] = 1;
        }
        else
        {
            power_mw[i] = 0.0;
            valid_mask[i] = 0;
        }
    }
};

} // namespace mmwf

#endif
