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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mmwf/persistence.hpp"
#include "mmwf/presets.hpp"
#include "mmwf/rng.hpp"
#include "mmwf/synthesis.hpp"
#include "mmwf/units.hpp"

using namespace mmwf;
namespace fs = std::filesystem;

namespace
{

fs::path temp_dir()
{
    static int counter = 0;
    fs::path dir = fs::temp_directory_path() / ("mmwf_persist_" + std::to_string(++counter));
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string replace_line(const std::string& text, const std::string& prefix, const std::string& replacement)
{
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
    {
        if (line.rfind(prefix, 0) == 0)
            out << replacement << '\n';
        else
            out << line << '\n';
    }
    return out.str();
}

SpatialTrackPdp sample_track(std::uint64_t seed = 5)
{
    TrackConfig cfg;
    cfg.seed = seed;
    std::vector<TapSpec> taps;
    for (int i = 0; i < 4; ++i)
    {
        TapSpec t;
        t.delay_s = 5e-9 * i;
        t.mean_power_dbm = -72.0 - 6.0 * i; // weakest tap dips below floor sometimes
        t.k_db = 8.0 + i;
        taps.push_back(t);
    }
    SpatialTrackPdp track =
        synthesize_track(taps, preset_lookup(Environment::nlos, Polarization::vv).autocorr, cfg);
    track.environment = "NLOS";
    track.polarization = "VV";
    return track;
}

AnalysisReport sample_report()
{
    AnalysisReport r;
    r.n_tracks = 3;
    r.n_samples = 1200;
    r.source_bins = 24;
    r.source_positions = 66;
    r.fit.rician = {RicianParams{0.94, 0.23}, 9.3, 1.2e-4, false};
    r.fit.rayleigh = {RayleighParams{0.7071}, 2.0e-2};
    r.fit.lognormal = {LognormalParams{-0.02, 0.21}, 5.0e-4, false};
    r.fit.best = "rician";
    r.fit.bounding_k_low_db = 9;
    r.fit.bounding_k_high_db = 15;
    r.fit.bounding_exact = true;
    r.autocorr.lags_wavelengths = {0.0, 0.4996731109554497, 0.9993462219108995};
    r.autocorr.coefficients = {1.0, 0.35, std::numeric_limits<double>::quiet_NaN()};
    r.autocorr.bins_per_lag = {24, 24, 0};
    r.autocorr.n_bins_averaged = 24;
    r.autocorr_fit = {AutocorrModel{0.99, 2.05, 0.0}, 3.2e-4, false};
    r.autocorr_fit_valid = true;
    r.decorrelation_lag_wl = 1.4990193328663492;
    return r;
}

} // namespace

TEST_CASE("track file round trip")
{
    fs::path dir = temp_dir();
    SpatialTrackPdp track = sample_track();

    SECTION("save/load/save produces identical bytes")
    {
        save_track(track, dir / "a.txt");
        SpatialTrackPdp loaded = load_track(dir / "a.txt");
        save_track(loaded, dir / "b.txt");
        CHECK(slurp(dir / "a.txt") == slurp(dir / "b.txt"));
        CHECK(loaded.environment == "NLOS");
        CHECK(loaded.polarization == "VV");
        REQUIRE(loaded.seed.has_value());
        CHECK(*loaded.seed == 5);
        CHECK(loaded.valid_mask == track.valid_mask);
    }
    SECTION("matrix round trip is bitwise once on the fixed-precision lattice")
    {
        save_track(track, dir / "a.txt");
        SpatialTrackPdp first = load_track(dir / "a.txt");
        // synthesized powers quantize once to 6-decimal dBm cells
        for (int l = 0; l < track.n_positions; ++l)
            for (int b = 0; b < track.n_bins; ++b)
                if (track.valid(l, b))
                    CHECK(first.at(l, b) == Catch::Approx(track.at(l, b)).epsilon(2e-7));
        save_track(first, dir / "b.txt");
        SpatialTrackPdp second = load_track(dir / "b.txt");
        CHECK(second.power_mw == first.power_mw); // lattice values round-trip bitwise
        CHECK(second.valid_mask == first.valid_mask);
    }
    SECTION("below-floor sentinels survive as NF cells")
    {
        SpatialTrackPdp t(3, 2, 5.35e-3, 1.0707e-2, 2.5e-9, -100.0);
        t.set_power(0, 0, 1e-6);
        t.set_power(1, 0, 0.0); // sentinel
        t.set_power(2, 0, 2e-6);
        t.set_power(0, 1, 1e-7);
        t.set_power(1, 1, 1e-7);
        t.set_power(2, 1, 1e-7);
        save_track(t, dir / "nf.txt");
        CHECK(slurp(dir / "nf.txt").find("NF") != std::string::npos);
        SpatialTrackPdp loaded = load_track(dir / "nf.txt");
        CHECK_FALSE(loaded.valid(1, 0));
        CHECK(loaded.at(1, 0) == 0.0);
        CHECK(loaded.valid(2, 1));
    }
}

TEST_CASE("track file validation errors")
{
    fs::path dir = temp_dir();
    SpatialTrackPdp track = sample_track();
    save_track(track, dir / "good.txt");
    std::string text = slurp(dir / "good.txt");

    SECTION("version mismatch")
    {
        std::string bad = replace_line(text, "mmwf-track", "mmwf-track format_version 9");
        std::ofstream(dir / "bad.txt", std::ios::binary) << bad;
        CHECK_THROWS_AS(load_track(dir / "bad.txt"), ParseError);
    }
    SECTION("dimension mismatch names the shortfall")
    {
        std::string bad = replace_line(text, "n_positions", "n_positions 67");
        std::ofstream(dir / "bad.txt", std::ios::binary) << bad;
        CHECK_THROWS_WITH(load_track(dir / "bad.txt"), Catch::Matchers::ContainsSubstring("67"));
    }
    SECTION("non-numeric cell reports line and column")
    {
        std::string bad = text;
        auto pos = bad.rfind("-7");
        bad.replace(pos, 2, "xx");
        std::ofstream(dir / "bad.txt", std::ios::binary) << bad;
        try
        {
            load_track(dir / "bad.txt");
            FAIL("expected ParseError");
        }
        catch (const ParseError& e)
        {
            CHECK(e.line > 0);
            CHECK(e.column > 0);
            CHECK(std::string(e.what()).find("line") != std::string::npos);
        }
    }
    SECTION("declared bins exceed row cells")
    {
        std::string bad = replace_line(text, "n_bins", "n_bins 5");
        std::ofstream(dir / "bad.txt", std::ios::binary) << bad;
        CHECK_THROWS_AS(load_track(dir / "bad.txt"), ParseError);
    }
}

TEST_CASE("report round trip")
{
    fs::path dir = temp_dir();
    AnalysisReport r = sample_report();
    save_report(r, dir / "report.json");

    SECTION("payload carries the bounding pair verbatim")
    {
        std::string text = slurp(dir / "report.json");
        CHECK(text.find("\"bounding_k_low_db\": 9") != std::string::npos);
        CHECK(text.find("\"bounding_k_high_db\": 15") != std::string::npos);
    }
    SECTION("load(save(r)) equals r")
    {
        AnalysisReport l = load_report(dir / "report.json");
        CHECK(l.n_tracks == r.n_tracks);
        CHECK(l.n_samples == r.n_samples);
        CHECK(l.fit.rician.params.dominant_amplitude == r.fit.rician.params.dominant_amplitude);
        CHECK(l.fit.rician.k_db == r.fit.rician.k_db);
        CHECK(l.fit.rayleigh.params.sigma == r.fit.rayleigh.params.sigma);
        CHECK(l.fit.lognormal.params.sigma_log == r.fit.lognormal.params.sigma_log);
        CHECK(l.fit.best == r.fit.best);
        CHECK(l.fit.bounding_k_low_db == 9);
        CHECK(l.fit.bounding_k_high_db == 15);
        CHECK(l.autocorr.lags_wavelengths == r.autocorr.lags_wavelengths);
        CHECK(l.autocorr.coefficients[1] == r.autocorr.coefficients[1]);
        CHECK(std::isnan(l.autocorr.coefficients[2]));
        CHECK(l.autocorr_fit.model.a == r.autocorr_fit.model.a);
        CHECK(l.decorrelation_lag_wl == r.decorrelation_lag_wl);
        // byte-stable rewrite
        save_report(l, dir / "report2.json");
        CHECK(slurp(dir / "report.json") == slurp(dir / "report2.json"));
    }
    SECTION("empty autocorrelation estimate rejected")
    {
        AnalysisReport bad = r;
        bad.autocorr.lags_wavelengths.clear();
        bad.autocorr.coefficients.clear();
        bad.autocorr.bins_per_lag.clear();
        CHECK_THROWS_AS(save_report(bad, dir / "bad.json"), std::invalid_argument);
    }
    SECTION("missing required field names the field")
    {
        std::string text = slurp(dir / "report.json");
        auto pos = text.find("\"n_tracks\"");
        std::string removed = text;
        removed.replace(pos, text.find(',', pos) - pos + 1, "");
        std::ofstream(dir / "bad.json", std::ios::binary) << removed;
        CHECK_THROWS_WITH(load_report(dir / "bad.json"), Catch::Matchers::ContainsSubstring("n_tracks"));
    }
}

TEST_CASE("plot CSV exports")
{
    fs::path dir = temp_dir();

    SECTION("autocorrelation estimate rows")
    {
        AutocorrEstimate est;
        est.lags_wavelengths = {0.0, 0.5, 1.0};
        est.coefficients = {0.99, 0.35, 0.13};
        est.bins_per_lag = {4, 4, 4};
        est.n_bins_averaged = 4;
        export_plot_csv(est, dir / "est.csv");
        std::istringstream in(slurp(dir / "est.csv"));
        std::string line;
        std::getline(in, line);
        CHECK(line == "lag_wavelengths,coefficient");
        int rows = 0;
        std::string first;
        while (std::getline(in, line))
        {
            if (rows == 0)
                first = line;
            ++rows;
        }
        CHECK(rows == 3);
        CHECK(first == "0,0.98999999999999999");
    }
    SECTION("rician cdf curve is monotone with the requested row count")
    {
        export_plot_csv(rician_from_k_db(9.0), 200, 2.0, dir / "cdf.csv");
        std::istringstream in(slurp(dir / "cdf.csv"));
        std::string line;
        std::getline(in, line);
        CHECK(line == "voltage_ratio,cdf");
        int rows = 0;
        double prev = -1.0;
        while (std::getline(in, line))
        {
            double v = std::stod(line.substr(line.find(',') + 1));
            CHECK(v >= prev);
            prev = v;
            ++rows;
        }
        CHECK(rows == 200);
    }
    SECTION("model curve starts at f(0)")
    {
        std::vector<double> lags = {0.0, 0.5, 1.0, 1.5};
        export_plot_csv(AutocorrModel{0.99, 2.05, 0.0}, lags, dir / "model.csv");
        std::istringstream in(slurp(dir / "model.csv"));
        std::string line;
        std::getline(in, line); // header
        std::getline(in, line);
        CHECK(line.substr(line.find(',') + 1) == "0.98999999999999999");
    }
}

TEST_CASE("bundled preset data file matches the embedded table")
{
    // the repo ships data/presets.txt; tests run from the build tree, so the
    // file is located relative to this source file
    fs::path data = fs::path(__FILE__).parent_path().parent_path() / "data" / "presets.txt";
    REQUIRE(fs::exists(data));
    std::vector<FadingPreset> parsed = load_presets_file(data);
    REQUIRE(parsed.size() == all_presets().size());
    for (std::size_t i = 0; i < parsed.size(); ++i)
    {
        CHECK(parsed[i].environment == all_presets()[i].environment);
        CHECK(parsed[i].polarization == all_presets()[i].polarization);
        CHECK(parsed[i].k_low_db == all_presets()[i].k_low_db);
        CHECK(parsed[i].k_high_db == all_presets()[i].k_high_db);
        CHECK(parsed[i].autocorr.a == all_presets()[i].autocorr.a);
        CHECK(parsed[i].autocorr.b == all_presets()[i].autocorr.b);
        CHECK(parsed[i].autocorr.c == all_presets()[i].autocorr.c);
    }
}
