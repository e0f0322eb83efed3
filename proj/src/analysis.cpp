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

#include "mmwf/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mmwf/units.hpp"

namespace mmwf
{

namespace
{

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

// Model CDF tabulated on a uniform grid for O(1) interpolation at the sample
// points; built by cumulative trapezoid integration of the PDF.
struct CdfGrid
{
    double dx = 1.0;
    std::vector<double> f;

    double eval(double x) const
    {
        if (x <= 0.0)
            return 0.0;
        double t = x / dx;
        auto i = static_cast<std::size_t>(t);
        if (i + 1 >= f.size())
            return 1.0;
        return f[i] + (f[i + 1] - f[i]) * (t - static_cast<double>(i));
    }
};

template <typename Pdf> CdfGrid tabulate_cdf(Pdf&& pdf, double x_max, int n_points = 8192)
{
    CdfGrid g;
    g.dx = x_max / n_points;
    g.f.resize(static_cast<std::size_t>(n_points) + 1);
    g.f[0] = 0.0;
    double prev = 0.0;
    double acc = 0.0;
    for (int i = 1; i <= n_points; ++i)
    {
        double cur = pdf(g.dx * i);
        acc += 0.5 * (prev + cur) * g.dx;
        g.f[static_cast<std::size_t>(i)] = acc < 1.0 ? acc : 1.0;
        prev = cur;
    }
    return g;
}

// Voltage-scale view of a sample set: sorted sqrt(power) plus the power mean
// square constraint for the fitters.
struct VoltageSamples
{
    std::vector<double> v; // ascending
    double mean_square = 1.0;
};

VoltageSamples to_voltage(const FadingSampleSet& samples, std::size_t min_count)
{
    if (samples.samples.size() < min_count)
    {
        std::ostringstream msg;
        msg << "distribution fit: need at least " << min_count << " samples, got " << samples.samples.size();
        throw std::runtime_error(msg.str());
    }
    VoltageSamples out;
    out.mean_square = mean(samples.samples);
    if (!(out.mean_square > 0.0))
        throw std::runtime_error("distribution fit: samples have non-positive mean square");
    out.v.reserve(samples.samples.size());
    for (double p : samples.samples)
    {
        if (!(p > 0.0))
            throw std::domain_error("distribution fit: non-positive power sample");
        out.v.push_back(std::sqrt(p));
    }
    std::sort(out.v.begin(), out.v.end());
    return out;
}

// Mean squared vertical CDF deviation, empirical CDF at midpoint convention
// (i - 1/2)/n.
double cdf_fit_error(const std::vector<double>& sorted, const CdfGrid& grid)
{
    double n = static_cast<double>(sorted.size());
    double sse = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i)
    {
        double emp = (static_cast<double>(i) + 0.5) / n;
        double d = emp - grid.eval(sorted[i]);
        sse += d * d;
    }
    return sse / n;
}

template <typename Cdf> double cdf_fit_error_fn(const std::vector<double>& sorted, Cdf&& cdf)
{
    double n = static_cast<double>(sorted.size());
    double sse = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i)
    {
        double emp = (static_cast<double>(i) + 0.5) / n;
        double d = emp - cdf(sorted[i]);
        sse += d * d;
    }
    return sse / n;
}

constexpr double k_grid_min_db = -5.0;
constexpr double k_grid_max_db = 25.0;
constexpr double k_grid_step_db = 0.1;
constexpr int k_grid_points = 301;

RicianFit fit_rician_impl(const VoltageSamples& vs)
{
    double x_max = vs.v.back() * (1.0 + 1e-9) + 1e-12;
    RicianFit best;
    double best_err = std::numeric_limits<double>::infinity();
    int best_idx = -1;
    for (int j = 0; j < k_grid_points; ++j)
    {
        double k_db = k_grid_min_db + k_grid_step_db * j;
        RicianParams params = rician_from_k_db(k_db, vs.mean_square);
        CdfGrid grid = tabulate_cdf([&](double x) { return rician_pdf(x, params); }, x_max);
        double err = cdf_fit_error(vs.v, grid);
        if (err < best_err)
        {
            best_err = err;
            best_idx = j;
            best.params = params;
            best.k_db = k_db;
        }
    }
    best.fit_error = best_err;
    best.degenerate = best_idx == k_grid_points - 1;
    return best;
}

RayleighFit fit_rayleigh_impl(const VoltageSamples& vs)
{
    // E[x^2] = 2 sigma^2
    RayleighFit fit;
    fit.params = RayleighParams{std::sqrt(0.5 * vs.mean_square)};
    fit.fit_error = cdf_fit_error_fn(vs.v, [&](double x) { return rayleigh_cdf(x, fit.params); });
    return fit;
}

LognormalFit fit_lognormal_impl(const VoltageSamples& vs)
{
    std::vector<double> logs;
    logs.reserve(vs.v.size());
    for (double x : vs.v)
        logs.push_back(std::log(x));
    double m = mean(logs);
    double var = 0.0;
    for (double l : logs)
        var += (l - m) * (l - m);
    var /= static_cast<double>(logs.size());
    LognormalFit fit;
    fit.degenerate = var < 1e-18;
    fit.params = LognormalParams{m, std::max(std::sqrt(var), 1e-12)};
    fit.fit_error = cdf_fit_error_fn(vs.v, [&](double x) { return lognormal_cdf(x, fit.params); });
    return fit;
}

// Bounding integer-dB Rician pair. A quantile level violates a pair when it
// falls outside the two model CDFs by more than `depth_tol` of probability;
// a pair brackets when at most `violation_budget` of the levels violate.
struct BoundingResult
{
    int k_low = 0;
    int k_high = 0;
    bool exact = true;
};

BoundingResult bounding_k_pair(const VoltageSamples& vs, double fitted_k_db)
{
    constexpr double depth_tol = 0.01;
    constexpr double violation_budget = 0.02;
    constexpr int k_int_min = -5;
    constexpr int k_int_max = 25;
    constexpr int n_k = k_int_max - k_int_min + 1;

    std::vector<double> levels;
    for (double q = 0.05; q <= 0.95 + 1e-12; q += 0.005)
        levels.push_back(q);
    std::vector<double> xq(levels.size());
    for (std::size_t j = 0; j < levels.size(); ++j)
    {
        auto idx = static_cast<std::size_t>(levels[j] * static_cast<double>(vs.v.size()));
        if (idx >= vs.v.size())
            idx = vs.v.size() - 1;
        xq[j] = vs.v[idx];
    }

    // model CDFs at the quantile abscissae
    std::vector<std::vector<double>> fk(n_k, std::vector<double>(levels.size()));
    for (int k = 0; k < n_k; ++k)
    {
        RicianParams params = rician_from_k_db(k_int_min + k, vs.mean_square);
        for (std::size_t j = 0; j < levels.size(); ++j)
            fk[static_cast<std::size_t>(k)][j] = rician_cdf(xq[j], params);
    }

    auto violation_fraction = [&](int lo, int hi) {
        const auto& a = fk[static_cast<std::size_t>(lo - k_int_min)];
        const auto& b = fk[static_cast<std::size_t>(hi - k_int_min)];
        int viol = 0;
        for (std::size_t j = 0; j < levels.size(); ++j)
        {
            double lo_f = std::min(a[j], b[j]);
            double hi_f = std::max(a[j], b[j]);
            double depth = std::max(lo_f - levels[j], levels[j] - hi_f);
            if (depth > depth_tol)
                ++viol;
        }
        return static_cast<double>(viol) / static_cast<double>(levels.size());
    };

    BoundingResult best;
    double best_mid_dist = std::numeric_limits<double>::infinity();
    for (int width = 0; width <= k_int_max - k_int_min; ++width)
    {
        bool found = false;
        for (int lo = k_int_min; lo + width <= k_int_max; ++lo)
        {
            int hi = lo + width;
            if (violation_fraction(lo, hi) <= violation_budget)
            {
                double mid_dist = std::fabs(0.5 * (lo + hi) - fitted_k_db);
                if (!found || mid_dist < best_mid_dist)
                {
                    best.k_low = lo;
                    best.k_high = hi;
                    best_mid_dist = mid_dist;
                    found = true;
                }
            }
        }
        if (found)
            return best;
    }
    // nothing brackets within budget: report the least-violating pair, flagged
    best.exact = false;
    double least = std::numeric_limits<double>::infinity();
    for (int lo = k_int_min; lo <= k_int_max; ++lo)
        for (int hi = lo; hi <= k_int_max; ++hi)
        {
            double v = violation_fraction(lo, hi);
            if (v < least || (v == least && hi - lo < best.k_high - best.k_low))
            {
                least = v;
                best.k_low = lo;
                best.k_high = hi;
            }
        }
    return best;
}

} // namespace

std::vector<double> bin_delays(std::span<const std::pair<double, double>> delay_power_mw, double bin_width_s)
{
    if (!(bin_width_s > 0.0))
        throw std::invalid_argument("bin_delays: bin width must be positive");
    std::vector<double> bins;
    for (const auto& [delay, power] : delay_power_mw)
    {
        if (!(delay >= 0.0))
            throw std::invalid_argument("bin_delays: negative delay");
        auto idx = static_cast<std::size_t>(delay / bin_width_s);
        if (idx >= bins.size())
            bins.resize(idx + 1, 0.0);
        bins[idx] += power; // linear-scale sum within a bin
    }
    return bins;
}

FadingSampleSet extract_fading_samples(const SpatialTrackPdp& track, const AnalysisOptions& opts)
{
    double cutoff_mw = track.noise_floor_mw() * db_to_linear(opts.threshold_db);
    int min_occ = opts.effective_min_occupancy(track.n_positions);

    FadingSampleSet out;
    out.source_positions = track.n_positions;
    std::vector<double> kept;
    for (int b = 0; b < track.n_bins; ++b)
    {
        kept.clear();
        for (int l = 0; l < track.n_positions; ++l)
            if (track.valid(l, b) && track.at(l, b) > cutoff_mw)
                kept.push_back(track.at(l, b));
        if (static_cast<int>(kept.size()) < min_occ)
            continue;
        double m = mean(kept);
        for (double p : kept)
            out.samples.push_back(p / m);
        ++out.source_bins;
    }
    if (out.source_bins == 0)
    {
        std::ostringstream msg;
        msg << "extract_fading_samples: no delay bin meets occupancy (threshold " << opts.threshold_db
            << " dB above floor, min occupancy " << min_occ << " of " << track.n_positions << " positions, "
            << track.n_bins << " bins examined)";
        throw std::runtime_error(msg.str());
    }
    return out;
}

FadingSampleSet pool_fading_samples(std::span<const FadingSampleSet> sets)
{
    FadingSampleSet out;
    for (const FadingSampleSet& s : sets)
    {
        out.samples.insert(out.samples.end(), s.samples.begin(), s.samples.end());
        out.source_bins += s.source_bins;
        out.source_positions = std::max(out.source_positions, s.source_positions);
    }
    return out;
}

RicianFit fit_rician(const FadingSampleSet& samples)
{
    return fit_rician_impl(to_voltage(samples, 100));
}

RayleighFit fit_rayleigh(const FadingSampleSet& samples)
{
    return fit_rayleigh_impl(to_voltage(samples, 100));
}

LognormalFit fit_lognormal(const FadingSampleSet& samples)
{
    return fit_lognormal_impl(to_voltage(samples, 100));
}

FitReport build_fit_report(const FadingSampleSet& samples)
{
    VoltageSamples vs = to_voltage(samples, 100);
    FitReport report;
    report.rician = fit_rician_impl(vs);
    report.rayleigh = fit_rayleigh_impl(vs);
    report.lognormal = fit_lognormal_impl(vs);

    report.best = "rician";
    double best_err = report.rician.fit_error;
    if (report.rayleigh.fit_error < best_err)
    {
        report.best = "rayleigh";
        best_err = report.rayleigh.fit_error;
    }
    if (report.lognormal.fit_error < best_err)
        report.best = "lognormal";

    BoundingResult bounds = bounding_k_pair(vs, report.rician.k_db);
    report.bounding_k_low_db = bounds.k_low;
    report.bounding_k_high_db = bounds.k_high;
    report.bounding_exact = bounds.exact;
    return report;
}

std::vector<double> sequence_autocorrelation(std::span<const double> seq, int max_lag)
{
    auto n = static_cast<int>(seq.size());
    std::vector<double> out(static_cast<std::size_t>(max_lag) + 1, nan_v);
    out[0] = 1.0;
    for (int i = 1; i <= max_lag; ++i)
    {
        int m = n - i;
        if (m < 2)
            continue;
        double mu = 0.0, mw = 0.0;
        for (int l = 0; l < m; ++l)
        {
            mu += seq[static_cast<std::size_t>(l)];
            mw += seq[static_cast<std::size_t>(l + i)];
        }
        mu /= m;
        mw /= m;
        double vu = 0.0, vw = 0.0, cov = 0.0;
        for (int l = 0; l < m; ++l)
        {
            double du = seq[static_cast<std::size_t>(l)] - mu;
            double dw = seq[static_cast<std::size_t>(l + i)] - mw;
            vu += du * du;
            vw += dw * dw;
            cov += du * dw;
        }
        // zero variance up to round-off (constant segment) excludes the lag
        double tiny_u = static_cast<double>(m) * (1e-14 * std::fabs(mu)) * (1e-14 * std::fabs(mu));
        double tiny_w = static_cast<double>(m) * (1e-14 * std::fabs(mw)) * (1e-14 * std::fabs(mw));
        if (!(vu > tiny_u) || !(vw > tiny_w))
            continue;
        double rho = cov / std::sqrt(vu * vw);
        out[static_cast<std::size_t>(i)] = std::clamp(rho, -1.0, 1.0);
    }
    return out;
}

AutocorrEstimate spatial_autocorrelation(const SpatialTrackPdp& track, const AnalysisOptions& opts)
{
    if (track.n_positions < 2)
        throw std::invalid_argument("spatial_autocorrelation: need at least 2 positions");
    int max_lag = std::min(opts.max_lag, track.n_positions - 2);
    if (max_lag < 1)
        throw std::invalid_argument("spatial_autocorrelation: track too short for any lag");

    double cutoff_mw = track.noise_floor_mw() * db_to_linear(opts.threshold_db);
    int min_occ = opts.effective_min_occupancy(track.n_positions);

    AutocorrEstimate est;
    est.lags_wavelengths.resize(static_cast<std::size_t>(max_lag) + 1);
    est.coefficients.assign(static_cast<std::size_t>(max_lag) + 1, nan_v);
    est.bins_per_lag.assign(static_cast<std::size_t>(max_lag) + 1, 0);
    for (int i = 0; i <= max_lag; ++i)
        est.lags_wavelengths[static_cast<std::size_t>(i)] = i * track.step_wavelengths();

    std::vector<double> sums(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (int b = 0; b < track.n_bins; ++b)
    {
        int occ = 0;
        for (int l = 0; l < track.n_positions; ++l)
            if (track.valid(l, b) && track.at(l, b) > cutoff_mw)
                ++occ;
        if (occ < min_occ)
            continue;
        ++est.n_bins_averaged;

        for (int i = 1; i <= max_lag; ++i)
        {
            // pairs (l, l+i) with both positions valid
            double mu = 0.0, mw = 0.0;
            int cnt = 0;
            for (int l = 0; l + i < track.n_positions; ++l)
            {
                bool ok = track.valid(l, b) && track.at(l, b) > cutoff_mw && track.valid(l + i, b) &&
                          track.at(l + i, b) > cutoff_mw;
                if (!ok)
                    continue;
                mu += track.at(l, b);
                mw += track.at(l + i, b);
                ++cnt;
            }
            if (cnt < 2)
                continue;
            mu /= cnt;
            mw /= cnt;
            double vu = 0.0, vw = 0.0, cov = 0.0;
            for (int l = 0; l + i < track.n_positions; ++l)
            {
                bool ok = track.valid(l, b) && track.at(l, b) > cutoff_mw && track.valid(l + i, b) &&
                          track.at(l + i, b) > cutoff_mw;
                if (!ok)
                    continue;
                double du = track.at(l, b) - mu;
                double dw = track.at(l + i, b) - mw;
                vu += du * du;
                vw += dw * dw;
                cov += du * dw;
            }
            double tiny_u = cnt * (1e-14 * std::fabs(mu)) * (1e-14 * std::fabs(mu));
            double tiny_w = cnt * (1e-14 * std::fabs(mw)) * (1e-14 * std::fabs(mw));
            if (!(vu > tiny_u) || !(vw > tiny_w))
                continue; // zero-variance segment (up to round-off): (bin, lag) pair excluded
            double rho = std::clamp(cov / std::sqrt(vu * vw), -1.0, 1.0);
            sums[static_cast<std::size_t>(i)] += rho;
            est.bins_per_lag[static_cast<std::size_t>(i)] += 1;
        }
    }
    if (est.n_bins_averaged == 0)
        throw std::runtime_error("spatial_autocorrelation: no delay bin meets occupancy");

    est.coefficients[0] = 1.0;
    est.bins_per_lag[0] = est.n_bins_averaged;
    for (int i = 1; i <= max_lag; ++i)
    {
        int cnt = est.bins_per_lag[static_cast<std::size_t>(i)];
        if (cnt > 0)
            est.coefficients[static_cast<std::size_t>(i)] = sums[static_cast<std::size_t>(i)] / cnt;
    }
    return est;
}

AutocorrEstimate pool_autocorr_estimates(std::span<const AutocorrEstimate> estimates, AutocorrPooling pooling)
{
    if (estimates.empty())
        throw std::invalid_argument("pool_autocorr_estimates: empty input");
    const AutocorrEstimate& first = estimates.front();
    for (const AutocorrEstimate& e : estimates)
    {
        if (e.lags_wavelengths.size() != first.lags_wavelengths.size())
            throw std::invalid_argument("pool_autocorr_estimates: lag grids differ");
        for (std::size_t i = 0; i < e.lags_wavelengths.size(); ++i)
            if (std::fabs(e.lags_wavelengths[i] - first.lags_wavelengths[i]) > 1e-12)
                throw std::invalid_argument("pool_autocorr_estimates: lag grids differ");
    }

    AutocorrEstimate out;
    out.lags_wavelengths = first.lags_wavelengths;
    out.coefficients.assign(first.coefficients.size(), nan_v);
    out.bins_per_lag.assign(first.coefficients.size(), 0);
    for (const AutocorrEstimate& e : estimates)
        out.n_bins_averaged += e.n_bins_averaged;

    for (std::size_t i = 0; i < out.coefficients.size(); ++i)
    {
        double sum = 0.0, weight = 0.0;
        for (const AutocorrEstimate& e : estimates)
        {
            double c = e.coefficients[i];
            if (std::isnan(c))
                continue;
            double w = pooling == AutocorrPooling::global ? static_cast<double>(e.bins_per_lag[i]) : 1.0;
            sum += w * c;
            weight += w;
            out.bins_per_lag[i] += e.bins_per_lag[i];
        }
        if (weight > 0.0)
            out.coefficients[i] = sum / weight;
    }
    return out;
}

namespace
{

struct ModelGridSums
{
    std::vector<double> x, y;
    double sy = 0.0, syy = 0.0;
};

double sse_direct(const ModelGridSums& d, double a, double b, double c)
{
    double sse = 0.0;
    for (std::size_t i = 0; i < d.x.size(); ++i)
    {
        double r = a * std::exp(-b * d.x[i]) - c - d.y[i];
        sse += r * r;
    }
    return sse;
}

} // namespace

AutocorrModelFit fit_autocorr_model(const AutocorrEstimate& estimate)
{
    if (estimate.lags_wavelengths.size() < 4)
        throw std::invalid_argument("fit_autocorr_model: need at least 4 lags");

    // lag 0 is definitionally 1 and carries no model information; fit over
    // the positive lags with finite coefficients
    ModelGridSums d;
    for (std::size_t i = 1; i < estimate.lags_wavelengths.size(); ++i)
    {
        double c = estimate.coefficients[i];
        if (std::isnan(c))
            continue;
        if (!std::isfinite(c))
            throw std::runtime_error("fit_autocorr_model: non-finite coefficient");
        d.x.push_back(estimate.lags_wavelengths[i]);
        d.y.push_back(c);
    }
    if (d.x.size() < 3)
        throw std::invalid_argument("fit_autocorr_model: need at least 3 finite positive lags");
    for (double yv : d.y)
    {
        d.sy += yv;
        d.syy += yv * yv;
    }
    auto m = static_cast<double>(d.x.size());

    constexpr double a_step = 0.01, b_step = 0.05, c_step = 0.01;
    constexpr int a_n = 121, b_n = 121, c_n = 101;

    // Pass 1: minimum SSE over the grid, using per-b partial sums so each
    // (a, c) cell costs O(1).
    double min_sse = std::numeric_limits<double>::infinity();
    std::vector<double> ev(d.x.size());
    for (int bi = 0; bi < b_n; ++bi)
    {
        double b = b_step * bi;
        double see = 0.0, se = 0.0, sey = 0.0;
        for (std::size_t i = 0; i < d.x.size(); ++i)
        {
            ev[i] = std::exp(-b * d.x[i]);
            see += ev[i] * ev[i];
            se += ev[i];
            sey += ev[i] * d.y[i];
        }
        for (int ai = 0; ai < a_n; ++ai)
        {
            double a = a_step * ai;
            for (int ci = 0; ci < c_n; ++ci)
            {
                double c = -0.5 + c_step * ci;
                double sse = a * a * see - 2.0 * a * c * se - 2.0 * a * sey + m * c * c + 2.0 * c * d.sy + d.syy;
                if (sse < min_sse)
                    min_sse = sse;
            }
        }
    }
    if (min_sse < 0.0)
        min_sse = 0.0;

    // Pass 2: among grid points within round-off of the minimum, prefer the
    // smallest b, then the smallest |c|, then the smallest a.
    double tie_eps = 1e-12 + 1e-9 * min_sse;
    double ga = 1.0, gb = 0.0, gc = 0.0;
    bool have = false;
    for (int bi = 0; bi < b_n; ++bi)
    {
        double b = b_step * bi;
        double see = 0.0, se = 0.0, sey = 0.0;
        for (std::size_t i = 0; i < d.x.size(); ++i)
        {
            double e = std::exp(-b * d.x[i]);
            see += e * e;
            se += e;
            sey += e * d.y[i];
        }
        for (int ai = 0; ai < a_n; ++ai)
        {
            double a = a_step * ai;
            for (int ci = 0; ci < c_n; ++ci)
            {
                double c = -0.5 + c_step * ci;
                double sse = a * a * see - 2.0 * a * c * se - 2.0 * a * sey + m * c * c + 2.0 * c * d.sy + d.syy;
                if (sse > min_sse + tie_eps)
                    continue;
                bool better = !have;
                if (!better)
                {
                    if (b != gb)
                        better = b < gb;
                    else if (std::fabs(c) != std::fabs(gc))
                        better = std::fabs(c) < std::fabs(gc);
                    else
                        better = a < ga;
                }
                if (better)
                {
                    ga = a;
                    gb = b;
                    gc = c;
                    have = true;
                }
            }
        }
    }

    // Bounded local refinement: coordinate ternary search within one grid
    // step of the chosen point, accepted only on strict improvement.
    double ra = ga, rb = gb, rc = gc;
    double best = sse_direct(d, ra, rb, rc);
    auto refine_coord = [&](double& coord, double lo, double hi) {
        double a_ = lo, b_ = hi;
        for (int it = 0; it < 48; ++it)
        {
            double m1 = a_ + (b_ - a_) / 3.0;
            double m2 = b_ - (b_ - a_) / 3.0;
            double save = coord;
            coord = m1;
            double e1 = sse_direct(d, ra, rb, rc);
            coord = m2;
            double e2 = sse_direct(d, ra, rb, rc);
            coord = save;
            if (e1 < e2)
                b_ = m2;
            else
                a_ = m1;
        }
        double cand = 0.5 * (a_ + b_);
        double save = coord;
        coord = cand;
        double e = sse_direct(d, ra, rb, rc);
        if (e < best * (1.0 - 1e-15) - 1e-300)
            best = e;
        else
            coord = save;
    };
    for (int sweep = 0; sweep < 3; ++sweep)
    {
        refine_coord(ra, std::max(0.0, ga - a_step), std::min(1.2, ga + a_step));
        refine_coord(rb, std::max(0.0, gb - b_step), std::min(6.0, gb + b_step));
        refine_coord(rc, std::max(-0.5, gc - c_step), std::min(0.5, gc + c_step));
    }

    double y_var = d.syy - d.sy * d.sy / m;
    AutocorrModelFit fit;
    fit.model = AutocorrModel{ra, rb, rc};
    fit.fit_error = best / m;
    fit.degenerate = rb < 0.025 || y_var < 1e-20;
    return fit;
}

double decorrelation_lag_wavelengths(const AutocorrEstimate& estimate)
{
    for (std::size_t i = 1; i < estimate.coefficients.size(); ++i)
    {
        double c = estimate.coefficients[i];
        if (!std::isnan(c) && c < 0.05)
            return estimate.lags_wavelengths[i];
    }
    return nan_v;
}

double moment_k_db(std::span<const double> power_samples)
{
    if (power_samples.size() < 2)
        throw std::invalid_argument("moment_k_db: need at least 2 samples");
    double m = mean(power_samples);
    if (!(m > 0.0))
        throw std::domain_error("moment_k_db: non-positive mean power");
    double var = 0.0;
    for (double p : power_samples)
        var += (p - m) * (p - m);
    var /= static_cast<double>(power_samples.size());
    double v = var / (m * m);
    if (v >= 1.0)
        return -std::numeric_limits<double>::infinity();
    double u = std::sqrt(1.0 - v);
    double k = u / (1.0 - u);
    return 10.0 * std::log10(k);
}

} // namespace mmwf
