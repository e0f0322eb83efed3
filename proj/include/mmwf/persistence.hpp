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

#ifndef MMWF_PERSISTENCE_HPP
#define MMWF_PERSISTENCE_HPP

#include <filesystem>
#include <stdexcept>
#include <string>

#include "mmwf/analysis.hpp"
#include "mmwf/track.hpp"

namespace mmwf
{

// Structured parse failure with the offending location.
struct ParseError : std::runtime_error
{
    ParseError(const std::string& msg, int line_, int column_ = 0)
        : std::runtime_error(msg + " (line " + std::to_string(line_) +
                             (column_ > 0 ? ", column " + std::to_string(column_) : "") + ")"),
          line(line_), column(column_)
    {
    }
    int line;
    int column;
};

// Track file: line-oriented text, versioned header followed by one row per
// position with powers in dBm at 6 decimal places; "NF" marks below-floor
// entries. save(load(file)) reproduces the file byte for byte; powers
// quantized by the fixed precision round-trip losslessly thereafter.
void save_track(const SpatialTrackPdp& track, const std::filesystem::path& path);
SpatialTrackPdp load_track(const std::filesystem::path& path);

// Analysis result bundle persisted as JSON.
struct AnalysisReport
{
    int n_tracks = 0;
    int n_samples = 0;
    int source_bins = 0;
    int source_positions = 0;
    FitReport fit;
    AutocorrEstimate autocorr;
    AutocorrModelFit autocorr_fit;
    bool autocorr_fit_valid = true; // false when the estimate was too degenerate to fit
    double decorrelation_lag_wl = 0.0; // NaN when the coefficient never drops below 0.05
};

void save_report(const AnalysisReport& report, const std::filesystem::path& path);
AnalysisReport load_report(const std::filesystem::path& path);

// Two-column plot-ready CSV exports.
void export_plot_csv(const AutocorrEstimate& estimate, const std::filesystem::path& path);
void export_plot_csv(const FadingSampleSet& samples, const std::filesystem::path& path);
void export_plot_csv(const AutocorrModel& model, std::span<const double> lags_wavelengths,
                     const std::filesystem::path& path);
void export_plot_csv(const RicianParams& params, int n_points, double x_max, const std::filesystem::path& path);

} // namespace mmwf

#endif
