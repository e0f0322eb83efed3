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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "mmwf/analysis.hpp"
#include "mmwf/presets.hpp"
#include "mmwf/rng.hpp"
#include "mmwf/synthesis.hpp"
#include "mmwf/units.hpp"

#include "oracles.hpp"

using namespace mmwf;

namespace
{

std::vector<TapSpec> simple_taps(int count, double k_db, double start_dbm = -70.0)
{
    std::vector<TapSpec> taps;
    for (int i = 0; i < count; ++i)
    {
        TapSpec t;
        t.delay_s = 5e-9 * i;
        t.mean_power_dbm = start_dbm - 2.0 * i;
        t.k_db = k_db;
        t.aod = AngleVector(0.0, 0.0);
        t.aoa = AngleVector(180.0, 0.0);
        taps.push_back(t);
    }
    return taps;
}

} // namespace

TEST_CASE("omni CIR synthesis")
{
    SECTION("single 0 dBm tap has unit amplitude")
    {
        std::vector<TapSpec> taps = simple_taps(1, 10.0, 0.0);
        ChannelImpulseResponse cir = synthesize_omni_cir(taps, 42);
        REQUIRE(cir.taps().size() == 1);
        CHECK(cir.taps()[0].amplitude == Catch::Approx(1.0).epsilon(1e-12));
        CHECK_FALSE(cir.directional());
    }
    SECTION("fixed seed reproduces the phase sequence")
    {
        std::vector<TapSpec> taps = simple_taps(6, 8.0);
        ChannelImpulseResponse a = synthesize_omni_cir(taps, 7);
        ChannelImpulseResponse b = synthesize_omni_cir(taps, 7);
        for (std::size_t i = 0; i < a.taps().size(); ++i)
            CHECK(a.taps()[i].phase_rad == b.taps()[i].phase_rad);
        ChannelImpulseResponse c = synthesize_omni_cir(taps, 8);
        CHECK(a.taps()[0].phase_rad != c.taps()[0].phase_rad);
    }
    SECTION("adding a tap never perturbs existing taps")
    {
        std::vector<TapSpec> base = simple_taps(4, 8.0);
        std::vector<TapSpec> more = simple_taps(5, 8.0);
        ChannelImpulseResponse a = synthesize_omni_cir(base, 999);
        ChannelImpulseResponse b = synthesize_omni_cir(more, 999);
        for (std::size_t i = 0; i < a.taps().size(); ++i)
            CHECK(a.taps()[i].phase_rad == b.taps()[i].phase_rad);
    }
    SECTION("duplicate delays within one bin are rejected")
    {
        std::vector<TapSpec> taps = simple_taps(2, 8.0);
        taps[1].delay_s = taps[0].delay_s + 1e-10; // same 2.5 ns bin
        CHECK_THROWS_AS(synthesize_omni_cir(taps, 1), std::invalid_argument);
    }
}

TEST_CASE("omni phase uniformity (KS at 1%)")
{
    constexpr int n = 10000;
    std::vector<TapSpec> taps = simple_taps(n, 8.0);
    for (int i = 0; i < n; ++i)
        taps[static_cast<std::size_t>(i)].delay_s = 5e-9 * i;
    ChannelImpulseResponse cir = synthesize_omni_cir(taps, 20260808ULL);
    std::vector<double> phases;
    phases.reserve(n);
    for (const MultipathComponent& t : cir.taps())
        phases.push_back(t.phase_rad);
    double d = oracles::ks_statistic(phases, [](double x) { return x / (2.0 * std::numbers::pi); });
    CHECK(d < oracles::ks_critical_1pct(n));
}

TEST_CASE("directional filter")
{
    AntennaPattern horn(15.0, 28.8, 30.0);
    AngleVector tx_point(0.0, 0.0);
    AngleVector rx_point(180.0, 0.0);

    SECTION("boresight tap gains exactly 30 dB from two 15 dBi horns")
    {
        std::vector<TapSpec> taps = simple_taps(1, 8.0);
        ChannelImpulseResponse omni = synthesize_omni_cir(taps, 3);
        ChannelImpulseResponse dir = apply_directional_filter(omni, horn, horn, tx_point, rx_point);
        REQUIRE(dir.taps().size() == 1);
        double gain_db = 20.0 * std::log10(dir.taps()[0].amplitude / omni.taps()[0].amplitude);
        CHECK(gain_db == Catch::Approx(30.0).margin(1e-9));
        CHECK(dir.directional());
        REQUIRE(dir.pointing().has_value());
        CHECK(dir.pointing()->tx.azimuth_deg == 0.0);
    }
    SECTION("half-HPBW azimuth offset at TX only costs 3.01 dB")
    {
        std::vector<TapSpec> taps = simple_taps(1, 8.0);
        taps[0].aod = AngleVector(14.4, 0.0); // one half HPBW off the TX boresight
        ChannelImpulseResponse omni = synthesize_omni_cir(taps, 3);
        ChannelImpulseResponse dir = apply_directional_filter(omni, horn, horn, tx_point, rx_point);
        REQUIRE(dir.taps().size() == 1);
        double gain_db = 20.0 * std::log10(dir.taps()[0].amplitude / omni.taps()[0].amplitude);
        CHECK(gain_db == Catch::Approx(30.0 - 3.0102999566398120).margin(1e-9));
    }
    SECTION("taps 90 degrees off both boresights drop below the floor")
    {
        std::vector<TapSpec> taps = simple_taps(2, 8.0);
        taps[1].mean_power_dbm = -75.0;       // -75 + (15-30)*2 = -105 dBm < -100 floor
        taps[1].aod = AngleVector(90.0, 0.0); // deep in the pattern floor
        taps[1].aoa = AngleVector(90.0, 0.0);
        ChannelImpulseResponse omni = synthesize_omni_cir(taps, 3);
        ChannelImpulseResponse dir = apply_directional_filter(omni, horn, horn, tx_point, rx_point, -100.0);
        CHECK(dir.taps().size() == 1); // M <= N, off-beam tap dropped
    }
    SECTION("directional input is a contract error")
    {
        std::vector<TapSpec> taps = simple_taps(1, 8.0);
        ChannelImpulseResponse omni = synthesize_omni_cir(taps, 3);
        ChannelImpulseResponse dir = apply_directional_filter(omni, horn, horn, tx_point, rx_point);
        CHECK_THROWS_AS(apply_directional_filter(dir, horn, horn, tx_point, rx_point), std::invalid_argument);
    }
    SECTION("every surviving tap maps to an omni tap with bounded weight")
    {
        std::vector<TapSpec> taps = simple_taps(8, 8.0, -60.0);
        for (std::size_t i = 0; i < taps.size(); ++i)
        {
            taps[i].aod = AngleVector(10.0 * static_cast<double>(i), 0.0);
            taps[i].aoa = AngleVector(180.0 - 12.0 * static_cast<double>(i), 5.0);
        }
        ChannelImpulseResponse omni = synthesize_omni_cir(taps, 17);
        ChannelImpulseResponse dir = apply_directional_filter(omni, horn, horn, tx_point, rx_point);
        CHECK(dir.taps().size() <= omni.taps().size());
        double gmax = horn.amplitude_gain(0.0, 0.0) * horn.amplitude_gain(0.0, 0.0);
        for (const MultipathComponent& dt : dir.taps())
        {
            bool matched = false;
            for (const MultipathComponent& ot : omni.taps())
                if (ot.delay_s == dt.delay_s)
                {
                    double ratio = dt.amplitude / ot.amplitude;
                    CHECK(ratio > 0.0);
                    CHECK(ratio <= gmax * (1.0 + 1e-12));
                    matched = true;
                }
            CHECK(matched);
        }
    }
}

TEST_CASE("track synthesis basics")
{
    TrackConfig cfg;
    cfg.seed = 11;
    AutocorrModel los_vv = preset_lookup(Environment::los, Polarization::vv).autocorr;

    SECTION("deterministic for identical inputs")
    {
        std::vector<TapSpec> taps = simple_taps(4, 10.0);
        SpatialTrackPdp a = synthesize_track(taps, los_vv, cfg);
        SpatialTrackPdp b = synthesize_track(taps, los_vv, cfg);
        CHECK(a.power_mw == b.power_mw); // bitwise
        cfg.seed = 12;
        SpatialTrackPdp c = synthesize_track(taps, los_vv, cfg);
        CHECK(a.power_mw != c.power_mw);
    }
    SECTION("mean power preservation is exact")
    {
        std::vector<TapSpec> taps = simple_taps(5, 9.0);
        SpatialTrackPdp t = synthesize_track(taps, los_vv, cfg);
        for (std::size_t k = 0; k < taps.size(); ++k)
        {
            int bin = static_cast<int>(taps[k].delay_s / cfg.bin_width_s);
            std::vector<double> seq;
            for (int l = 0; l < t.n_positions; ++l)
                seq.push_back(t.at(l, bin));
            double target = dbm_to_mw(taps[k].mean_power_dbm);
            CHECK(mean(seq) == Catch::Approx(target).epsilon(1e-9));
        }
    }
    SECTION("near-infinite K gives a constant power sequence within 0.1 dB")
    {
        std::vector<TapSpec> taps = simple_taps(1, 60.0);
        SpatialTrackPdp t = synthesize_track(taps, los_vv, cfg);
        double lo = 1e300, hi = 0.0;
        for (int l = 0; l < t.n_positions; ++l)
        {
            lo = std::min(lo, t.at(l, 0));
            hi = std::max(hi, t.at(l, 0));
        }
        CHECK(linear_to_db(hi / lo) < 0.1);
    }
    SECTION("perfect correlation gives a constant sequence and flags the clip")
    {
        std::vector<TapSpec> taps = simple_taps(1, 6.0);
        SpatialTrackPdp t = synthesize_track(taps, AutocorrModel{1.0, 0.0, 0.0}, cfg);
        CHECK(t.warnings.eigenvalue_clipped); // rank-1 matrix has no Cholesky factor
        double first = t.at(0, 0);
        for (int l = 1; l < t.n_positions; ++l)
            CHECK(t.at(l, 0) == Catch::Approx(first).epsilon(1e-9));
    }
    SECTION("duplicate delay bins rejected; non-finite K rejected")
    {
        std::vector<TapSpec> taps = simple_taps(2, 8.0);
        taps[1].delay_s = taps[0].delay_s;
        CHECK_THROWS_AS(synthesize_track(taps, los_vv, cfg), std::invalid_argument);
        taps = simple_taps(1, 8.0);
        taps[0].k_db = std::numeric_limits<double>::infinity();
        CHECK_THROWS_AS(synthesize_track(taps, los_vv, cfg), std::invalid_argument);
    }
    SECTION("empty bins between taps carry the sentinel")
    {
        std::vector<TapSpec> taps = simple_taps(2, 8.0); // bins 0 and 2
        SpatialTrackPdp t = synthesize_track(taps, los_vv, cfg);
        REQUIRE(t.n_bins == 3);
        for (int l = 0; l < t.n_positions; ++l)
        {
            CHECK_FALSE(t.valid(l, 1));
            CHECK(t.at(l, 1) == 0.0);
        }
    }
}

TEST_CASE("gaussian-to-power correlation mapping against a Monte Carlo oracle")
{
    // 10^6 paired draws per grid point
    constexpr int n_draws = 1000000;
    for (double k_db : {-100.0, 6.0, 12.0})
    {
        double k = k_db < -50.0 ? 0.0 : db_to_linear(k_db);
        double a = std::sqrt(k / (k + 1.0));
        double sg = std::sqrt(0.5 / (k + 1.0));
        for (double rho : {0.2, 0.6, 0.9})
        {
            RandomStream rng(0xC0FFEEULL + static_cast<std::uint64_t>(k * 100.0 + rho * 10.0));
            double sum1 = 0, sum2 = 0, sum11 = 0, sum22 = 0, sum12 = 0;
            double q = std::sqrt(1.0 - rho * rho);
            for (int i = 0; i < n_draws; ++i)
            {
                double zr1 = rng.normal(), zi1 = rng.normal();
                double zr2 = rho * zr1 + q * rng.normal();
                double zi2 = rho * zi1 + q * rng.normal();
                double p1 = (a + sg * zr1) * (a + sg * zr1) + sg * zi1 * sg * zi1;
                double p2 = (a + sg * zr2) * (a + sg * zr2) + sg * zi2 * sg * zi2;
                sum1 += p1;
                sum2 += p2;
                sum11 += p1 * p1;
                sum22 += p2 * p2;
                sum12 += p1 * p2;
            }
            double m1 = sum1 / n_draws, m2 = sum2 / n_draws;
            double v1 = sum11 / n_draws - m1 * m1, v2 = sum22 / n_draws - m2 * m2;
            double cov = sum12 / n_draws - m1 * m2;
            double empirical = cov / std::sqrt(v1 * v2);
            CHECK(power_corr_from_gaussian(rho, k) == Catch::Approx(empirical).margin(0.005));
            // inverse map round-trips
            CHECK(gaussian_corr_for_power(power_corr_from_gaussian(rho, k), k) == Catch::Approx(rho).margin(1e-12));
        }
    }
    SECTION("rayleigh limit: power correlation is rho squared")
    {
        CHECK(power_corr_from_gaussian(0.5, 0.0) == Catch::Approx(0.25));
        CHECK(gaussian_corr_for_power(0.25, 0.0) == Catch::Approx(0.5));
    }
    SECTION("clipping below the attainable range")
    {
        double k = 4.0;
        double lo_attainable = power_corr_from_gaussian(-1.0, k);
        CHECK(gaussian_corr_for_power(lo_attainable - 0.2, k) == Catch::Approx(-1.0));
    }
}

TEST_CASE("per-tap-K mapping reproduces the model's lag-1 power correlation")
{
    // LOS V-V at K = 12 dB: ensemble Pearson at the first half-wavelength lag
    // should land on f(0.5 wl) = 0.99 exp(-1.025) ~ 0.355.
    const AutocorrModel los_vv = preset_lookup(Environment::los, Polarization::vv).autocorr;
    TrackConfig cfg;
    constexpr int n_tracks = 500;
    double sum1 = 0, sum2 = 0, sum11 = 0, sum22 = 0, sum12 = 0;
    long count = 0;
    std::vector<TapSpec> taps = simple_taps(1, 12.0);
    for (int t = 0; t < n_tracks; ++t)
    {
        cfg.seed = splitmix64_at(99000, static_cast<std::uint64_t>(t));
        SpatialTrackPdp track = synthesize_track(taps, los_vv, cfg, CorrMapping::per_tap_k);
        for (int l = 0; l + 1 < track.n_positions; ++l)
        {
            double p1 = track.at(l, 0), p2 = track.at(l + 1, 0);
            sum1 += p1;
            sum2 += p2;
            sum11 += p1 * p1;
            sum22 += p2 * p2;
            sum12 += p1 * p2;
            ++count;
        }
    }
    double m1 = sum1 / count, m2 = sum2 / count;
    double rho = (sum12 / count - m1 * m2) /
                 std::sqrt((sum11 / count - m1 * m1) * (sum22 / count - m2 * m2));
    double expected = los_vv.eval(cfg.step_wavelengths());
    CHECK(expected == Catch::Approx(0.3552).margin(0.001));
    CHECK(rho == Catch::Approx(expected).margin(0.05));
}

TEST_CASE("window-matched calibration reproduces the estimator curve")
{
    const FadingPreset& preset = preset_lookup(Environment::nlos, Polarization::vv);
    TrackConfig cfg;
    std::vector<double> rep;
    for (int i = 0; i < 9; ++i)
        rep.push_back(preset.k_low_db + (preset.k_high_db - preset.k_low_db) * i / 8.0);
    MatchedCorrelation matched = solve_matched_correlation(preset.autocorr, cfg, rep);
    CHECK(matched.converged);
    CHECK(matched.max_match_error < 0.03);
    REQUIRE(matched.power_correlation.size() == static_cast<std::size_t>(cfg.n_positions));
    CHECK(matched.power_correlation[0] == 1.0);

    // 80-track ensemble: the pooled estimator output should land near the model
    std::vector<AutocorrEstimate> estimates;
    std::vector<TapSpec> taps = simple_taps(6, 0.0);
    AnalysisOptions aopts;
    for (int t = 0; t < 80; ++t)
    {
        cfg.seed = splitmix64_at(5150, static_cast<std::uint64_t>(t));
        RandomStream kdraw(splitmix64_at(cfg.seed, 0x4B44));
        for (TapSpec& tap : taps)
            tap.k_db = kdraw.uniform(preset.k_low_db, preset.k_high_db);
        SpatialTrackPdp track =
            synthesize_track(taps, preset.autocorr, cfg, CorrMapping::window_matched, &matched);
        estimates.push_back(spatial_autocorrelation(track, aopts));
    }
    AutocorrEstimate pooled = pool_autocorr_estimates(estimates);
    double mse = 0.0;
    for (int i = 0; i <= 10; ++i)
    {
        double dres = pooled.coefficients[static_cast<std::size_t>(i)] -
                      preset.autocorr.eval(pooled.lags_wavelengths[static_cast<std::size_t>(i)]);
        mse += dres * dres;
    }
    mse /= 11.0;
    CHECK(mse < 0.02); // loose gate at 80 tracks; the acceptance suite runs 200
}

TEST_CASE("degenerate all-ones model passes through the matcher")
{
    TrackConfig cfg;
    std::vector<double> rep = {8.0};
    MatchedCorrelation matched = solve_matched_correlation(AutocorrModel{1.0, 0.0, 0.0}, cfg, rep);
    for (double r : matched.power_correlation)
        CHECK(r == 1.0);
}

TEST_CASE("PDP records round-trip losslessly")
{
    TrackConfig cfg;
    cfg.seed = 5;
    std::vector<TapSpec> taps = simple_taps(3, 7.0, -92.0); // weak taps: some below-floor sentinels likely
    SpatialTrackPdp track =
        synthesize_track(taps, preset_lookup(Environment::los, Polarization::vv).autocorr, cfg);
    std::vector<PdpRecord> records = track_to_pdp_records(track);
    CHECK(records.size() == static_cast<std::size_t>(track.n_positions));
    SpatialTrackPdp back = track_from_pdp_records(records, track);
    CHECK(back.power_mw == track.power_mw);
    CHECK(back.valid_mask == track.valid_mask);
}
