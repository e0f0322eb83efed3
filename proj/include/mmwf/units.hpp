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

#ifndef MMWF_UNITS_HPP
#define MMWF_UNITS_HPP

#include <cmath>
#include <cstddef>
#include <span>

namespace mmwf
{

inline constexpr double speed_of_light_m_s = 299792458.0;

// dB <-> linear power ratio
inline double db_to_linear(double db) { return std::pow(10.0, 0.1 * db); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// dBm <-> milliwatt
inline double dbm_to_mw(double dbm) { return std::pow(10.0, 0.1 * dbm); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

// Pairwise (cascade) summation. Bounds accumulated round-off to O(log n) and
// keeps pooled statistics independent of how upstream work was chunked.
inline double pairwise_sum(std::span<const double> v)
{
    if (v.size() <= 32)
    {
        double s = 0.0;
        for (double x : v)
            s += x;
        return s;
    }
    std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

inline double mean(std::span<const double> v)
{
    return v.empty() ? 0.0 : pairwise_sum(v) / static_cast<double>(v.size());
}

} // namespace mmwf

#endif
