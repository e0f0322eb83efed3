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

#ifndef MMWF_DISTRIBUTIONS_HPP
#define MMWF_DISTRIBUTIONS_HPP

#include <limits>
#include <stdexcept>

namespace mmwf
{

// Scattered-component standard deviation of a Rayleigh envelope.
struct RayleighParams
{
    RayleighParams() = default;
    explicit RayleighParams(double sigma_)
        : sigma(sigma_)
    {
        if (!(sigma > 0.0))
            throw std::invalid_argument("RayleighParams: sigma must be positive");
    }
    double sigma = 1.0;
};

// Dominant-path amplitude A and scattered standard deviation sigma of a
// Rician envelope; K = A^2 / (2 sigma^2).
struct RicianParams
{
    RicianParams() = default;
    RicianParams(double dominant_amplitude_, double sigma_)
        : dominant_amplitude(dominant_amplitude_), sigma(sigma_)
    {
        if (!(dominant_amplitude >= 0.0))
            throw std::invalid_argument("RicianParams: dominant amplitude must be >= 0");
        if (!(sigma > 0.0))
            throw std::invalid_argument("RicianParams: sigma must be positive");
    }
    double dominant_amplitude = 0.0;
    double sigma = 1.0;
};

// Log-domain mean and standard deviation of a lognormal envelope.
struct LognormalParams
{
    LognormalParams() = default;
    LognormalParams(double mean_log_, double sigma_log_)
        : mean_log(mean_log_), sigma_log(sigma_log_)
    {
        if (!(sigma_log > 0.0))
            throw std::invalid_argument("LognormalParams: sigma must be positive");
    }
    double mean_log = 0.0;
    double sigma_log = 1.0;
};

// Modified Bessel function of the first kind, zero order. Power series below
// x = 30, asymptotic expansion above; relative error < 1e-10 throughout.
double bessel_i0(double x);
double log_bessel_i0(double x);

double rayleigh_pdf(double x, const RayleighParams& p);
double rayleigh_cdf(double x, const RayleighParams& p);

// Rician PDF; collapses exactly to the Rayleigh PDF when A = 0, and switches
// to a log-domain evaluation for large arguments to avoid overflow.
double rician_pdf(double x, const RicianParams& p);
double rician_cdf(double x, const RicianParams& p);

double lognormal_pdf(double x, const LognormalParams& p);
double lognormal_cdf(double x, const LognormalParams& p);

double rician_k_linear(const RicianParams& p);
// K in dB; -inf when A = 0 (degenerate Rayleigh boundary, not an error).
double rician_k_db(const RicianParams& p);

// Rician parameters realizing K (dB) with the given envelope mean square
// E[x^2] = A^2 + 2 sigma^2.
RicianParams rician_from_k_db(double k_db, double mean_square = 1.0);

} // namespace mmwf

#endif
