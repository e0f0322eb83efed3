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

#ifndef MMWF_PRESETS_HPP
#define MMWF_PRESETS_HPP

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mmwf/autocorr_model.hpp"

namespace mmwf
{

enum class Environment
{
    los,
    nlos,
    los_to_nlos,
};

enum class Polarization
{
    vv,
    vh,
};

std::string to_string(Environment e);
std::string to_string(Polarization p);
std::optional<Environment> parse_environment(const std::string& s);
std::optional<Polarization> parse_polarization(const std::string& s);

// Measurement-derived small-scale fading parameters for one environment and
// polarization cell: Rician K-factor range plus the exponential spatial
// autocorrelation model constants.
struct FadingPreset
{
    Environment environment = Environment::los;
    Polarization polarization = Polarization::vv;
    double k_low_db = 0.0;
    double k_high_db = 0.0;
    AutocorrModel autocorr;
    std::string comment = "-"; // provenance note carried by the data file
};

// Bundled 28 GHz street-canyon presets, one per environment/polarization
// cell. Total over the 3 x 2 grid.
std::span<const FadingPreset> all_presets();
const FadingPreset& preset_lookup(Environment e, Polarization p);

// "los-vv", "nlos-vh", "los-to-nlos-vv", ...
std::string preset_key(Environment e, Polarization p);
std::optional<std::pair<Environment, Polarization>> parse_preset_key(const std::string& key);

// Line-oriented preset file format (one row per cell).
std::string format_presets(std::span<const FadingPreset> presets);
std::vector<FadingPreset> parse_presets(const std::string& text);
std::vector<FadingPreset> load_presets_file(const std::filesystem::path& path);

} // namespace mmwf

#endif
