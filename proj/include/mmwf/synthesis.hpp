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

#ifndef MMWF_SYNTHESIS_HPP
#define MMWF_SYNTHESIS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "mmwf/angle.hpp"
#include "mmwf/antenna.hpp"
#include "mmwf/autocorr_model.hpp"
#include "mmwf/cir.hpp"
#include "mmwf/track.hpp"

namespace mmwf
{

// Local-area track geometry and generator seed. Defaults match a 28 GHz
// sounder: 66 positions at half-wavelength (5.35 mm) steps, 2.5 ns delay
// bins, -100 dBm noise floor.
struct TrackConfig
{
    int n_positions = 66;
    double step_m = 5.35e-3;
    double wavelength_m = 1.0707e-2; // c / 28 GHz
    double bin_width_s = 2.5e-9;
    double noise_floor_dbm = -100.0;
    std::uint64_t seed = 1;

    double step_wavelengths() const { return step_m / wavelength_m; }
};

// Per-tap synthesis target: spatial-mean bin power, delay, Rician K and the
// departure/arrival angles.
struct TapSpec
{
    double mean_power_dbm = -70.0;
    double delay_s = 0.0;
    double k_db = 10.0;
    AngleVector aod;
    AngleVector aoa;
};

// How the scattered component's spatial correlation is derived from the
// power-autocorrelation model:
//  - sqrt_model:      rho_s = sqrt(max(0, f)). Exact power correlation only
//                     in the Rayleigh limit; fast default.
//  - per_tap_k:       inverts the Gaussian-to-power correlation map at each
//                     tap's K, so pairwise power correlation equals f exactly.
//  - window_matched:  per_tap_k plus a deterministic calibration that
//                     accounts for the finite-window, mean-subtracted
//                     autocorrelation estimator, so the *estimated* curve of
//                     a track ensemble reproduces f.
enum class CorrMapping
{
    sqrt_model,
    per_tap_k,
    window_matched,
};

// Pairwise power correlation of two Rician taps whose scattered components
// have (real) Gaussian correlation rho:
//   rho_p = (2 K rho + rho^2) / (2 K + 1),  K linear.
double power_corr_from_gaussian(double rho, double k_linear);
// Inverse map; the requested power correlation is clipped into the range
// attainable at this K.
double gaussian_corr_for_power(double rho_p, double k_linear);

// Output of the window-matched calibration: the power-correlation target per
// lag distance (0..n_positions-1) whose finite-window estimator expectation
// reproduces the model over the matched lags.
struct MatchedCorrelation
{
    std::vector<double> power_correlation;
    double window_mean_correlation = 0.0; // quadratic-form mean of the target, diagnostics
    double max_match_error = 0.0;
    bool converged = true;
};

// Deterministic solve (internally seeded Monte Carlo polish included);
// `representative_k_db` should reflect the K mixture of the taps that will
// use the result.
MatchedCorrelation solve_matched_correlation(const AutocorrModel& model, const TrackConfig& cfg,
                                             std::span<const double> representative_k_db, int match_lags = 16);

// Omnidirectional tap delay line with i.i.d. uniform phases drawn from
// per-tap sub-streams of `seed`. Taps must occupy distinct delay bins.
ChannelImpulseResponse synthesize_omni_cir(std::span<const TapSpec> taps, std::uint64_t seed,
                                           double bin_width_s = 2.5e-9);

// Applies fixed-pointing TX/RX patterns to an omni response; taps whose
// weighted power falls to the noise floor are dropped.
ChannelImpulseResponse apply_directional_filter(const ChannelImpulseResponse& cir, const AntennaPattern& tx_pattern,
                                                const AntennaPattern& rx_pattern, const AngleVector& tx_pointing,
                                                const AngleVector& rx_pointing, double noise_floor_dbm = -100.0);

// Full spatial-track synthesis: per tap, a dominant amplitude plus a
// spatially correlated circularly-symmetric complex Gaussian scattered
// component realizes the tap's K; the sequence is rescaled so its spatial
// mean equals the tap's mean power exactly. Tap k draws from sub-stream
// seed XOR splitmix(k). Pass a precomputed MatchedCorrelation to avoid
// re-running the window_matched calibration per track.
SpatialTrackPdp synthesize_track(std::span<const TapSpec> taps, const AutocorrModel& autocorr, const TrackConfig& cfg,
                                 CorrMapping mapping = CorrMapping::sqrt_model,
                                 const MatchedCorrelation* matched = nullptr);

// Lossless per-position reshaping for persistence.
struct PdpRecord
{
    int position = 0;
    std::vector<double> power_mw;
    std::vector<std::uint8_t> valid;
};

std::vector<PdpRecord> track_to_pdp_records(const SpatialTrackPdp& track);
// Inverse composition; `like` supplies the scalar header fields.
SpatialTrackPdp track_from_pdp_records(std::span<const PdpRecord> records, const SpatialTrackPdp& like);

} // namespace mmwf

#endif
