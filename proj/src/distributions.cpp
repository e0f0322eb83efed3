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

#include "mmwf/distributions.hpp"

#include <cmath>
#include <numbers>

namespace mmwf
{

namespace
{

constexpr double i0_series_cutoff = 30.0;

double bessel_i0_series(double x)
{
    double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 120; ++k)
    {
        term *= q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (term < sum * 1e-17)
            break;
    }
    return sum;
}

double log_bessel_i0_asymptotic(double x)
{
    // I0(x) ~ e^x / sqrt(2 pi x) * (1 + sum_k b_k / x^k), b_k = ((2k-1)!!)^2 / (k! 8^k)
    static const double b[8] = {
        0.125,
        0.0703125,
        0.0732421875,
        0.112152099609375,
        0.227108001708984375,
        0.57250142097473144531,
        1.72772750258445739746,
        6.07404200127348303795,
    };
    double inv = 1.0 / x;
    double s = 0.0;
    for (int k = 7; k >= 0; --k)
        s = (s + b[k]) * inv;
    return x - 0.5 * std::log(2.0 * std::numbers::pi * x) + std::log1p(s);
}

} // namespace

double bessel_i0(double x)
{
    x = std::fabs(x);
    if (x < i0_series_cutoff)
        return bessel_i0_series(x);
    return std::exp(log_bessel_i0_asymptotic(x));
}

double log_bessel_i0(double x)
{
    x = std::fabs(x);
    if (x < i0_series_cutoff)
        return std::log(bessel_i0_series(x));
    return log_bessel_i0_asymptotic(x);
}

double rayleigh_pdf(double x, const RayleighParams& p)
{
    if (!(x >= 0.0))
        throw std::domain_error("rayleigh_pdf: x must be >= 0");
    double s2 = p.sigma * p.sigma;
    return x / s2 * std::exp(-0.5 * x * x / s2);
}

double rayleigh_cdf(double x, const RayleighParams& p)
{
    if (!(x >= 0.0))
        throw std::domain_error("rayleigh_cdf: x must be >= 0");
    double s2 = p.sigma * p.sigma;
    return -std::expm1(-0.5 * x * x / s2);
}

double rician_pdf(double x, const RicianParams& p)
{
    if (!(x >= 0.0))
        throw std::domain_error("rician_pdf: x must be >= 0");
    if (p.dominant_amplitude == 0.0)
        return rayleigh_pdf(x, RayleighParams{p.sigma}); // I0(0) = 1 collapse, bit-exact
    if (x == 0.0)
        return 0.0;
    double a = p.dominant_amplitude;
    double s2 = p.sigma * p.sigma;
    double expo = -0.5 * (x * x + a * a) / s2;
    double barg = a * x / s2;
    if (barg < i0_series_cutoff && expo > -700.0)
        return x / s2 * std::exp(expo) * bessel_i0_series(barg);
    // log-domain path for large K or far tails
    double lg = std::log(x / s2) + expo + log_bessel_i0(barg);
    return lg < -745.0 ? 0.0 : std::exp(lg);
}

double rician_cdf(double x, const RicianParams& p)
{
    if (!(x >= 0.0))
        throw std::domain_error("rician_cdf: x must be >= 0");
    if (p.dominant_amplitude == 0.0)
        return rayleigh_cdf(x, RayleighParams{p.sigma});
    if (x == 0.0)
        return 0.0;

    // P(X <= x) with X^2/sigma^2 noncentral chi-square (2 dof), evaluated as
    // a Poisson mixture of gamma tails:
    //   F = sum_j Pois(j; K) * P(Pois(z) >= j + 1),  z = x^2 / (2 sigma^2)
    double s2 = p.sigma * p.sigma;
    double h = 0.5 * p.dominant_amplitude * p.dominant_amplitude / s2; // K linear
    double z = 0.5 * x * x / s2;

    int jmax = static_cast<int>(std::ceil(h + 40.0 * std::sqrt(h + 1.0) + 40.0));
    bool log_weights = h > 700.0; // exp(-h) would underflow

    double tz = z > 700.0 ? 0.0 : std::exp(-z); // Pois(i; z) term, underflow means gamma tail is 1
    double qz = tz;                             // P(Pois(z) <= j)
    double w = log_weights ? 0.0 : std::exp(-h);
    double cumw = 0.0;
    double f = 0.0;
    for (int j = 0; j <= jmax; ++j)
    {
        if (log_weights)
            w = std::exp(-h + static_cast<double>(j) * std::log(h) - std::lgamma(static_cast<double>(j) + 1.0));
        double tail = 1.0 - qz;
        if (tail < 0.0)
            tail = 0.0;
        f += w * tail;
        cumw += w;
        if (cumw > 1.0 - 1e-16 && w < 1e-18)
            break;
        tz *= z / (static_cast<double>(j) + 1.0);
        qz += tz;
        if (!log_weights)
            w *= h / (static_cast<double>(j) + 1.0);
    }
    if (f < 0.0)
        return 0.0;
    return f > 1.0 ? 1.0 : f;
}

double lognormal_pdf(double x, const LognormalParams& p)
{
    if (!(x > 0.0))
        throw std::domain_error("lognormal_pdf: x must be > 0");
    double d = (std::log(x) - p.mean_log) / p.sigma_log;
    return std::exp(-0.5 * d * d) / (std::sqrt(2.0 * std::numbers::pi) * p.sigma_log * x);
}

double lognormal_cdf(double x, const LognormalParams& p)
{
    if (!(x > 0.0))
        throw std::domain_error("lognormal_cdf: x must be > 0");
    double d = (std::log(x) - p.mean_log) / (p.sigma_log * std::numbers::sqrt2);
    return 0.5 * std::erfc(-d);
}

double rician_k_linear(const RicianParams& p)
{
    double a = p.dominant_amplitude;
    return a * a / (2.0 * p.sigma * p.sigma);
}

double rician_k_db(const RicianParams& p)
{
    double k = rician_k_linear(p);
    if (k == 0.0)
        return -std::numeric_limits<double>::infinity(); // degenerate Rayleigh boundary
    return 10.0 * std::log10(k);
}

RicianParams rician_from_k_db(double k_db, double mean_square)
{
    if (!(mean_square > 0.0))
        throw std::invalid_argument("rician_from_k_db: mean square must be positive");
    double k = std::pow(10.0, 0.1 * k_db);
    double sigma = std::sqrt(mean_square / (2.0 * (k + 1.0)));
    double a = std::sqrt(mean_square * k / (k + 1.0));
    return RicianParams{a, sigma};
}

} // namespace mmwf
