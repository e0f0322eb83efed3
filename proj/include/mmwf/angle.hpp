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

#ifndef MMWF_ANGLE_HPP
#define MMWF_ANGLE_HPP

#include <cmath>
#include <stdexcept>

namespace mmwf
{

// Azimuth/elevation pair in degrees. Azimuth is normalized into [0, 360) at
// construction; elevation must lie in [-90, 90].
struct AngleVector
{
    AngleVector() = default;

    AngleVector(double azimuth, double elevation)
    {
        if (!(elevation >= -90.0 && elevation <= 90.0))
            throw std::invalid_argument("AngleVector: elevation must be in [-90, 90] degrees");
        azimuth = std::fmod(azimuth, 360.0);
        if (azimuth < 0.0)
            azimuth += 360.0;
        if (azimuth >= 360.0) // fmod may round up to 360 for tiny negatives
            azimuth = 0.0;
        azimuth_deg = azimuth;
        elevation_deg = elevation;
    }

    double azimuth_deg = 0.0;
    double elevation_deg = 0.0;
};

// Shortest signed azimuth offset a - b, wrapped into (-180, 180].
inline double wrap_azimuth_offset_deg(double a_deg, double b_deg)
{
    double d = std::fmod(a_deg - b_deg, 360.0);
    if (d <= -180.0)
        d += 360.0;
    else if (d > 180.0)
        d -= 360.0;
    return d;
}

} // namespace mmwf

#endif
