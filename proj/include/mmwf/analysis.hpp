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

#ifndef MMWF_ANALYSIS_HPP
#define MMWF_ANALYSIS_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mmwf/autocorr_model.hpp"
#include "mmwf/distributions.hpp"
#include "mmwf/track.hpp"

namespace mmwf
{

// Knobs of the PDP-track analysis pipeline.
struct AnalysisOptions
{
    // A position contributes to a bin when its power exceeds the noise floor
    // by this margin.
    double threshold_db = 5.0;
    // Minimum valid positions before a bin contributes; 0 selects half of
    // the track positions (rounded up).
    int min_occupancy = 0;
    // Largest spatial lag (in steps) of the autocorrelation estimate.
    int max_lag = 16;

    int effective_min_occupancy(int n_positions) const
    {
        return min_occupancy > 0 ? min_occupancy : (n_positions + 1) / 2;
    }
};

enum class AutocorrPooling
{
    per_track, // average per-bin coefficients within each track, then across tracks
    global,    // weight every (track, bin) pair equally
};

// Normalized linear power ratios |a|^2 / mean(|a|^2), pooled across delay
// bins under the delay-independence assumption.
struct FadingSampleSet
{
    std::vector<double> samples;
    int source_bins = 0;
    int source_positions = 0;
};

// Average spatial autocorrelation versus lag. Missing coefficients (every
// contributing bin excluded at that lag) are NaN.
struct AutocorrEstimate
{
    std::vector<double> lags_wavelengths;
    std::vector<double> coefficients;
    std::vector<int> bins_per_lag;
    int n_bins_averaged = 0;
};

struct RicianFit
{
    RicianParams params;
    double k_db = 0.0;
    double fit_error = 0.0;
    bool degenerate = false;
};

struct RayleighFit
{
    RayleighParams params;
    double fit_error = 0.0;
};

struct LognormalFit
{
    LognormalParams params;
    double fit_error = 0.0;
    bool degenerate = false;
};

// Three-family comparison plus the bounding integer-dB Rician pair that
// brackets the empirical CDF.
struct FitReport
{
    RicianFit rician;
    RayleighFit rayleigh;
    LognormalFit lognormal;
    std::string best;
    int bounding_k_low_db = 0;
    int bounding_k_high_db = 0;
    bool bounding_exact = true;
};

struct AutocorrModelFit
{
    AutocorrModel model;
    double fit_error = 0.0;
    bool degenerate = false;
};

// Sums component powers into half-open delay bins [k w, (k+1) w).
std::vector<double> bin_delays(std::span<const std::pair<double, double>> delay_power_mw, double bin_width_s);

// Per delay bin: keep positions above floor + threshold, require minimum
// occupancy, normalize by the bin's spatial mean over kept positions, pool
// all bins into one sample set.
FadingSampleSet extract_fading_samples(const SpatialTrackPdp& track, const AnalysisOptions& opts = {});
FadingSampleSet pool_fading_samples(std::span<const FadingSampleSet> sets);

// CDF-domain fits on the voltage scale (square roots of the power ratios).
// Fit error is the mean squared vertical deviation between the empirical CDF
// (midpoint convention) and the model CDF at the sample points.
RicianFit fit_rician(const FadingSampleSet& samples);
RayleighFit fit_rayleigh(const FadingSampleSet& samples);
LognormalFit fit_lognormal(const FadingSampleSet& samples);
FitReport build_fit_report(const FadingSampleSet& samples);

// Autocorrelation coefficients of one power sequence at lags 0..max_lag,
// with the leading and lagging segment means subtracted separately. Lag 0 is
// 1 by definition; zero-variance lags come back NaN. This is the per-bin
// kernel of the track-level estimator.
std::vector<double> sequence_autocorrelation(std::span<const double> seq, int max_lag);

// Track-level spatial autocorrelation: per-bin coefficients averaged across
// bins meeting occupancy at each lag.
AutocorrEstimate spatial_autocorrelation(const SpatialTrackPdp& track, const AnalysisOptions& opts = {});
AutocorrEstimate pool_autocorr_estimates(std::span<const AutocorrEstimate> estimates,
                                         AutocorrPooling pooling = AutocorrPooling::per_track);

// MMSE fit of the exponential model over the positive lags: coarse grid
// (a 0.01, b 0.05, c 0.01 steps) followed by bounded local refinement. Ties
// resolved toward smallest b, then smallest |c|.
AutocorrModelFit fit_autocorr_model(const AutocorrEstimate& estimate);

// First lag at which the coefficient drops below 0.05 (reporting convention
// for decorrelation distance); NaN when it never does.
double decorrelation_lag_wavelengths(const AutocorrEstimate& estimate);

// Method-of-moments K estimate from normalized power samples (unit mean):
// Var = (1 + 2K) / (1 + K)^2 inverted. Returns K in dB, -inf for
// Rayleigh-or-wider spread.
double moment_k_db(std::span<const double> power_samples);

} // namespace mmwf

#endif
