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

#ifndef MMWF_CIR_HPP
#define MMWF_CIR_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mmwf/angle.hpp"

namespace mmwf
{

// One resolvable multipath component of the tap delay line: linear voltage
// amplitude, phase in [0, 2pi), propagation delay and departure/arrival
// angle pairs.
struct MultipathComponent
{
    MultipathComponent() = default;

    MultipathComponent(double amplitude_, double phase_rad_, double delay_s_, AngleVector aod_, AngleVector aoa_)
        : amplitude(amplitude_), phase_rad(phase_rad_), delay_s(delay_s_), aod(aod_), aoa(aoa_)
    {
        if (!(amplitude >= 0.0))
            throw std::invalid_argument("MultipathComponent: amplitude must be >= 0");
        if (!(delay_s >= 0.0))
            throw std::invalid_argument("MultipathComponent: delay must be >= 0");
        constexpr double two_pi = 2.0 * std::numbers::pi;
        phase_rad = std::fmod(phase_rad, two_pi);
        if (phase_rad < 0.0)
            phase_rad += two_pi;
        if (phase_rad >= two_pi)
            phase_rad = 0.0;
    }

    double amplitude = 0.0; // linear voltage, sqrt(mW)
    double phase_rad = 0.0;
    double delay_s = 0.0;
    AngleVector aod;
    AngleVector aoa;
};

// Fixed TX/RX beam pointing of a directional response.
struct BeamPointing
{
    AngleVector tx;
    AngleVector rx;
};

// Tap delay line channel impulse response. Omnidirectional when no pointing
// is recorded; directional (a subset of the omni taps weighted by the
// antenna patterns) otherwise. Taps are kept sorted by delay.
class ChannelImpulseResponse
{
  public:
    explicit ChannelImpulseResponse(std::vector<MultipathComponent> taps,
                                    std::optional<BeamPointing> pointing = std::nullopt)
        : taps_(std::move(taps)), pointing_(pointing)
    {
        std::stable_sort(taps_.begin(), taps_.end(),
                         [](const MultipathComponent& a, const MultipathComponent& b) { return a.delay_s < b.delay_s; });
    }

    const std::vector<MultipathComponent>& taps() const { return taps_; }
    bool directional() const { return pointing_.has_value(); }
    const std::optional<BeamPointing>& pointing() const { return pointing_; }

  private:
    std::vector<MultipathComponent> taps_;
    std::optional<BeamPointing> pointing_;
};

} // namespace mmwf

#endif
