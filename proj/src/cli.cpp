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

#include "mmwf/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmwf/analysis.hpp"
#include "mmwf/persistence.hpp"
#include "mmwf/presets.hpp"
#include "mmwf/rng.hpp"
#include "mmwf/synthesis.hpp"
#include "mmwf/units.hpp"
#include "mmwf/version.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace mmwf::cli
{

namespace
{

// Tolerances of the round-trip gate.
constexpr double bracket_depth_tol = 0.01;     // CDF probability depth counted as a violation
constexpr double bracket_violation_budget = 0.02;
constexpr double autocorr_mse_tol = 0.01;      // over lags 0..10 half-wavelengths
constexpr double abc_tol[3] = {0.05, 0.25, 0.05};

struct SimulationSpec
{
    std::string label;        // preset key or "explicit"
    std::string environment = "-";
    std::string polarization = "-";
    double k_low_db = 0.0;
    double k_high_db = 0.0;
    AutocorrModel autocorr;
};

struct SimulateOptions
{
    std::string preset;
    bool has_explicit = false;
    double k_low_db = 0.0, k_high_db = 0.0;
    double a = 0.0, b = 0.0, c = 0.0;
    int tracks = 1;
    int taps = 8;
    std::uint64_t seed = 1; // fixed default keeps unseeded runs reproducible
    int positions = 66;
    double step_mm = 5.35;
    double bin_ns = 2.5;
    double noise_floor_dbm = -100.0;
    int jobs = 1;
    std::string out_dir;
    bool calibrated_mapping = false;
};

struct AnalyzeOptions
{
    std::vector<std::string> inputs;
    std::string out_dir;
    std::string pooling = "per-track";
    int max_lag = 16;
    double threshold_db = 5.0;
    int min_occupancy = 0;
    int jobs = 1;
};

struct RoundtripOptions
{
    std::string preset = "los-vv";
    int tracks = 200;
    int taps = 24;
    std::uint64_t seed = 1;
    int jobs = 1;
    std::string out_dir;
    std::string pooling = "per-track";
    bool calibrated_mapping = true; // the gate needs the window-matched mapping
};

std::vector<FadingPreset> resolve_preset_table(std::ostream& err)
{
    const char* override_path = std::getenv("MMWF_PRESET_PATH");
    if (override_path != nullptr && *override_path != '\0')
    {
        try
        {
            return load_presets_file(override_path);
        }
        catch (const std::exception& e)
        {
            err << "error: MMWF_PRESET_PATH: " << e.what() << "\n";
            throw;
        }
    }
    auto bundled = all_presets();
    return {bundled.begin(), bundled.end()};
}

std::optional<SimulationSpec> lookup_spec(const std::string& key, const std::vector<FadingPreset>& table)
{
    auto parsed = parse_preset_key(key);
    if (!parsed)
        return std::nullopt;
    for (const FadingPreset& p : table)
        if (p.environment == parsed->first && p.polarization == parsed->second)
        {
            SimulationSpec spec;
            spec.label = key;
            spec.environment = to_string(p.environment);
            spec.polarization = to_string(p.polarization);
            spec.k_low_db = p.k_low_db;
            spec.k_high_db = p.k_high_db;
            spec.autocorr = p.autocorr;
            return spec;
        }
    return std::nullopt;
}

// Deterministic default tap plan: every other delay bin, 0.5 dB power decay
// per tap (keeps every tap well above the noise floor so all bins meet
// occupancy), K drawn uniformly in dB from the requested range on a
// per-track sub-stream.
std::vector<TapSpec> make_tap_plan(const SimulationSpec& spec, const TrackConfig& cfg, int n_taps,
                                   std::uint64_t track_seed)
{
    RandomStream k_stream(splitmix64_at(track_seed, 0x4B44)); // K-draw sub-stream
    std::vector<TapSpec> taps;
    taps.reserve(static_cast<std::size_t>(n_taps));
    for (int k = 0; k < n_taps; ++k)
    {
        TapSpec tap;
        tap.delay_s = 2.0 * cfg.bin_width_s * k;
        tap.mean_power_dbm = -70.0 - 0.5 * k;
        tap.k_db = k_stream.uniform(spec.k_low_db, spec.k_high_db);
        tap.aod = AngleVector{-24.5 + 7.0 * k, -10.0};
        tap.aoa = AngleVector{180.0 - 5.0 * k, 9.0};
        taps.push_back(tap);
    }
    return taps;
}

std::string track_filename(int index)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "track_%04d.txt", index);
    return buf;
}

void write_manifest(const fs::path& dir, const std::string& subcommand, const ordered_json& config,
                    std::uint64_t seed, const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs)
{
    ordered_json j;
    j["format_version"] = 1;
    j["tool"] = "mmwfading";
    j["tool_version"] = version_string;
    j["subcommand"] = subcommand;
    j["seed"] = seed;
    j["config"] = config;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write manifest to " + (dir / "manifest.json").string());
    out << j.dump(2) << "\n";
}

// Static fan-out over track indices; output depends only on the index, so
// the schedule cannot change results.
void parallel_for(int count, int jobs, const std::function<void(int)>& work)
{
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1)
    {
        for (int i = 0; i < count; ++i)
            work(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&]() {
            for (;;)
            {
                int i = next.fetch_add(1);
                if (i >= count)
                    return;
                try
                {
                    work(i);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                    return;
                }
            }
        });
    for (std::thread& th : pool)
        th.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

TrackConfig make_track_config(const SimulateOptions& o)
{
    TrackConfig cfg;
    cfg.n_positions = o.positions;
    cfg.step_m = o.step_mm * 1e-3;
    cfg.bin_width_s = o.bin_ns * 1e-9;
    cfg.noise_floor_dbm = o.noise_floor_dbm;
    cfg.seed = o.seed;
    return cfg;
}

int run_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err)
{
    if (opts.preset.empty() && !opts.has_explicit)
    {
        err << "error: provide --preset or an explicit parameter set (--k-low-db --k-high-db --autocorr-a/-b/-c)\n";
        return exit_usage;
    }
    if (!opts.preset.empty() && opts.has_explicit)
    {
        err << "error: --preset conflicts with explicit K range / autocorr parameters\n";
        return exit_usage;
    }

    SimulationSpec spec;
    if (!opts.preset.empty())
    {
        auto table = resolve_preset_table(err);
        auto found = lookup_spec(opts.preset, table);
        if (!found)
        {
            err << "error: unknown preset '" << opts.preset << "'\n";
            return exit_usage;
        }
        spec = *found;
    }
    else
    {
        if (opts.k_low_db > opts.k_high_db)
        {
            err << "error: --k-low-db must not exceed --k-high-db\n";
            return exit_usage;
        }
        spec.label = "explicit";
        spec.k_low_db = opts.k_low_db;
        spec.k_high_db = opts.k_high_db;
        try
        {
            spec.autocorr = AutocorrModel{opts.a, opts.b, opts.c};
        }
        catch (const std::exception& e)
        {
            err << "error: " << e.what() << "\n";
            return exit_usage;
        }
    }

    TrackConfig base_cfg = make_track_config(opts);
    fs::path dir(opts.out_dir);
    fs::create_directories(dir);

    CorrMapping mapping = opts.calibrated_mapping ? CorrMapping::window_matched : CorrMapping::sqrt_model;
    std::optional<MatchedCorrelation> matched;
    if (mapping == CorrMapping::window_matched)
    {
        // representative K mixture for the calibration: uniform grid over the range
        std::vector<double> rep;
        for (int i = 0; i < 9; ++i)
            rep.push_back(spec.k_low_db + (spec.k_high_db - spec.k_low_db) * i / 8.0);
        matched = solve_matched_correlation(spec.autocorr, base_cfg, rep);
    }

    std::vector<std::string> outputs(static_cast<std::size_t>(opts.tracks));
    parallel_for(opts.tracks, opts.jobs, [&](int i) {
        TrackConfig cfg = base_cfg;
        cfg.seed = splitmix64_at(opts.seed, static_cast<std::uint64_t>(i));
        std::vector<TapSpec> taps = make_tap_plan(spec, cfg, opts.taps, cfg.seed);
        SpatialTrackPdp track =
            synthesize_track(taps, spec.autocorr, cfg, mapping, matched ? &*matched : nullptr);
        track.environment = spec.environment;
        track.polarization = spec.polarization;
        std::string name = track_filename(i);
        save_track(track, dir / name);
        outputs[static_cast<std::size_t>(i)] = name;
    });

    ordered_json config;
    config["preset"] = spec.label;
    config["environment"] = spec.environment;
    config["polarization"] = spec.polarization;
    config["k_low_db"] = spec.k_low_db;
    config["k_high_db"] = spec.k_high_db;
    config["autocorr"] = {{"a", spec.autocorr.a}, {"b", spec.autocorr.b}, {"c", spec.autocorr.c}};
    config["tracks"] = opts.tracks;
    config["taps"] = opts.taps;
    config["positions"] = opts.positions;
    config["step_mm"] = opts.step_mm;
    config["bin_ns"] = opts.bin_ns;
    config["noise_floor_dbm"] = opts.noise_floor_dbm;
    config["jobs"] = opts.jobs;
    config["mapping"] = opts.calibrated_mapping ? "window-matched" : "sqrt-model";
    write_manifest(dir, "simulate", config, opts.seed, {}, outputs);

    out << "simulate " << spec.label << ": K in [" << spec.k_low_db << ", " << spec.k_high_db << "] dB, autocorr ("
        << spec.autocorr.a << ", " << spec.autocorr.b << ", " << spec.autocorr.c << ")\n";
    out << "wrote " << opts.tracks << " track(s) x " << opts.taps << " taps x " << opts.positions << " positions to "
        << dir.string() << " (seed " << opts.seed << ", mapping "
        << (opts.calibrated_mapping ? "window-matched" : "sqrt-model") << ")\n";
    return exit_ok;
}

struct AnalyzeOutcome
{
    AnalysisReport report;
    FadingSampleSet pooled;
    AutocorrEstimate autocorr;
};

AnalyzeOutcome analyze_tracks(const std::vector<SpatialTrackPdp>& tracks, const AnalysisOptions& aopts,
                              AutocorrPooling pooling, int jobs)
{
    std::vector<FadingSampleSet> sample_sets(tracks.size());
    std::vector<AutocorrEstimate> estimates(tracks.size());
    parallel_for(static_cast<int>(tracks.size()), jobs, [&](int i) {
        sample_sets[static_cast<std::size_t>(i)] = extract_fading_samples(tracks[static_cast<std::size_t>(i)], aopts);
        estimates[static_cast<std::size_t>(i)] = spatial_autocorrelation(tracks[static_cast<std::size_t>(i)], aopts);
    });

    AnalyzeOutcome outcome;
    outcome.pooled = pool_fading_samples(sample_sets);
    outcome.autocorr = pool_autocorr_estimates(estimates, pooling);

    outcome.report.n_tracks = static_cast<int>(tracks.size());
    outcome.report.n_samples = static_cast<int>(outcome.pooled.samples.size());
    outcome.report.source_bins = outcome.pooled.source_bins;
    outcome.report.source_positions = outcome.pooled.source_positions;
    outcome.report.fit = build_fit_report(outcome.pooled);
    outcome.report.autocorr = outcome.autocorr;
    outcome.report.decorrelation_lag_wl = decorrelation_lag_wavelengths(outcome.autocorr);
    try
    {
        outcome.report.autocorr_fit = fit_autocorr_model(outcome.autocorr);
        outcome.report.autocorr_fit_valid = true;
    }
    catch (const std::exception&)
    {
        outcome.report.autocorr_fit_valid = false; // degenerate estimate (e.g. constant track)
    }
    return outcome;
}

std::vector<SpatialTrackPdp> load_tracks_checked(const std::vector<std::string>& paths)
{
    std::vector<SpatialTrackPdp> tracks;
    tracks.reserve(paths.size());
    for (const std::string& p : paths)
    {
        SpatialTrackPdp t = load_track(p);
        if (!tracks.empty())
        {
            const SpatialTrackPdp& first = tracks.front();
            if (t.n_bins != first.n_bins)
                throw std::runtime_error("input '" + p + "' has " + std::to_string(t.n_bins) + " bins, expected " +
                                         std::to_string(first.n_bins));
            if (t.n_positions != first.n_positions)
                throw std::runtime_error("input '" + p + "' has " + std::to_string(t.n_positions) +
                                         " positions, expected " + std::to_string(first.n_positions));
            if (std::fabs(t.step_m - first.step_m) > 1e-15 || std::fabs(t.wavelength_m - first.wavelength_m) > 1e-15)
                throw std::runtime_error("input '" + p + "' has a different track geometry");
        }
        tracks.push_back(std::move(t));
    }
    return tracks;
}

void write_analysis_outputs(const fs::path& dir, const AnalyzeOutcome& outcome, std::vector<std::string>& outputs)
{
    save_report(outcome.report, dir / "report.json");
    outputs.push_back("report.json");
    export_plot_csv(outcome.autocorr, dir / "autocorr_empirical.csv");
    outputs.push_back("autocorr_empirical.csv");
    if (outcome.report.autocorr_fit_valid)
    {
        export_plot_csv(outcome.report.autocorr_fit.model, outcome.autocorr.lags_wavelengths,
                        dir / "autocorr_model_fit.csv");
        outputs.push_back("autocorr_model_fit.csv");
    }
    export_plot_csv(outcome.pooled, dir / "fading_cdf.csv");
    outputs.push_back("fading_cdf.csv");
}

int run_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err)
{
    AnalysisOptions aopts;
    aopts.max_lag = opts.max_lag;
    aopts.threshold_db = opts.threshold_db;
    aopts.min_occupancy = opts.min_occupancy;
    AutocorrPooling pooling = opts.pooling == "global" ? AutocorrPooling::global : AutocorrPooling::per_track;

    fs::path dir(opts.out_dir);
    fs::create_directories(dir);

    AnalyzeOutcome outcome;
    try
    {
        std::vector<SpatialTrackPdp> tracks = load_tracks_checked(opts.inputs);
        outcome = analyze_tracks(tracks, aopts, pooling, opts.jobs);
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_data;
    }

    std::vector<std::string> outputs;
    write_analysis_outputs(dir, outcome, outputs);

    ordered_json config;
    config["pooling"] = opts.pooling;
    config["max_lag"] = opts.max_lag;
    config["threshold_db"] = opts.threshold_db;
    config["min_occupancy"] = opts.min_occupancy;
    config["jobs"] = opts.jobs;
    write_manifest(dir, "analyze", config, 0, opts.inputs, outputs);

    const AnalysisReport& rep = outcome.report;
    out << "analyzed " << rep.n_tracks << " track(s), " << rep.n_samples << " samples from " << rep.source_bins
        << " bins\n";
    out << "best fit: " << rep.fit.best << " (rician K " << std::fixed << std::setprecision(2) << rep.fit.rician.k_db
        << " dB, bounding [" << rep.fit.bounding_k_low_db << ", " << rep.fit.bounding_k_high_db << "] dB"
        << (rep.fit.bounding_exact ? "" : ", inexact") << ")\n";
    out.unsetf(std::ios::floatfield);
    if (rep.autocorr_fit_valid)
        out << "autocorr model (A, B, C) = (" << rep.autocorr_fit.model.a << ", " << rep.autocorr_fit.model.b << ", "
            << rep.autocorr_fit.model.c << ")" << (rep.autocorr_fit.degenerate ? " [degenerate]" : "") << "\n";
    else
        out << "autocorr model: not fitted (degenerate estimate)\n";
    out << "report written to " << (dir / "report.json").string() << "\n";
    return exit_ok;
}

// Fraction of quantile levels in [0.05, 0.95] at which the pooled empirical
// CDF escapes the envelope of the two preset-endpoint Rician CDFs by more
// than the depth tolerance.
double bracket_violation_fraction(const FadingSampleSet& pooled, double k_low_db, double k_high_db)
{
    std::vector<double> v;
    v.reserve(pooled.samples.size());
    for (double p : pooled.samples)
        v.push_back(std::sqrt(p));
    std::sort(v.begin(), v.end());
    double m2 = mean(pooled.samples);
    RicianParams lo_params = rician_from_k_db(k_low_db, m2);
    RicianParams hi_params = rician_from_k_db(k_high_db, m2);

    int viol = 0, count = 0;
    for (double q = 0.05; q <= 0.95 + 1e-12; q += 0.005)
    {
        auto idx = static_cast<std::size_t>(q * static_cast<double>(v.size()));
        if (idx >= v.size())
            idx = v.size() - 1;
        double x = v[idx];
        double f1 = rician_cdf(x, lo_params);
        double f2 = rician_cdf(x, hi_params);
        double depth = std::max(std::min(f1, f2) - q, q - std::max(f1, f2));
        if (depth > bracket_depth_tol)
            ++viol;
        ++count;
    }
    return static_cast<double>(viol) / static_cast<double>(count);
}

int run_roundtrip_single(const RoundtripOptions& opts, const SimulationSpec& spec, const fs::path& dir,
                         std::ostream& out, std::ostream& err)
{
    if (opts.tracks < 150)
        out << "WARN: " << opts.tracks
            << " track(s) is an insufficient ensemble for the model-recovery gates; running anyway\n";

    SimulateOptions sim;
    sim.preset = spec.label;
    sim.tracks = opts.tracks;
    sim.taps = opts.taps;
    sim.seed = opts.seed;
    sim.jobs = opts.jobs;
    sim.out_dir = (dir / "tracks").string();
    sim.calibrated_mapping = opts.calibrated_mapping;
    int rc = run_simulate(sim, out, err);
    if (rc != exit_ok)
        return rc;

    AnalyzeOptions ana;
    for (int i = 0; i < opts.tracks; ++i)
        ana.inputs.push_back((dir / "tracks" / track_filename(i)).string());
    ana.out_dir = (dir / "analysis").string();
    ana.pooling = opts.pooling;
    ana.jobs = opts.jobs;
    rc = run_analyze(ana, out, err);
    if (rc != exit_ok)
        return rc;

    // reload for the comparison so the gate sees exactly what was persisted
    std::vector<SpatialTrackPdp> tracks = load_tracks_checked(ana.inputs);
    AnalysisOptions aopts;
    AnalyzeOutcome outcome = analyze_tracks(
        tracks, aopts, opts.pooling == "global" ? AutocorrPooling::global : AutocorrPooling::per_track, opts.jobs);

    bool all_pass = true;
    auto gate = [&](const std::string& name, double value, double tol, const std::string& detail) {
        bool pass = value <= tol;
        all_pass = all_pass && pass;
        out << "  " << name << ": " << detail << " (tol " << tol << ") " << (pass ? "PASS" : "FAIL") << "\n";
    };

    double viol = bracket_violation_fraction(outcome.pooled, spec.k_low_db, spec.k_high_db);
    {
        std::ostringstream d;
        d << std::fixed << std::setprecision(2) << 100.0 * viol << "% of quantiles outside the K=[" << spec.k_low_db
          << "," << spec.k_high_db << "] dB envelope by more than " << bracket_depth_tol;
        gate("k-bracket", viol, bracket_violation_budget, d.str());
    }

    double mse = 0.0;
    int mse_lags = std::min<int>(10, static_cast<int>(outcome.autocorr.lags_wavelengths.size()) - 1);
    for (int i = 0; i <= mse_lags; ++i)
    {
        double c = outcome.autocorr.coefficients[static_cast<std::size_t>(i)];
        double f = spec.autocorr.eval(outcome.autocorr.lags_wavelengths[static_cast<std::size_t>(i)]);
        double dres = std::isnan(c) ? 1.0 : c - f;
        mse += dres * dres;
    }
    mse /= static_cast<double>(mse_lags + 1);
    {
        std::ostringstream d;
        d << "autocorr MSE over lags 0.." << mse_lags << " = " << std::setprecision(4) << mse;
        gate("autocorr-mse", mse, autocorr_mse_tol, d.str());
    }

    if (outcome.report.autocorr_fit_valid)
    {
        const AutocorrModel& fit = outcome.report.autocorr_fit.model;
        double deltas[3] = {std::fabs(fit.a - spec.autocorr.a), std::fabs(fit.b - spec.autocorr.b),
                            std::fabs(fit.c - spec.autocorr.c)};
        const char* names[3] = {"autocorr-A", "autocorr-B", "autocorr-C"};
        double fitted[3] = {fit.a, fit.b, fit.c};
        double target[3] = {spec.autocorr.a, spec.autocorr.b, spec.autocorr.c};
        for (int i = 0; i < 3; ++i)
        {
            std::ostringstream d;
            d << "fitted " << std::setprecision(3) << fitted[i] << " vs " << target[i] << ", |delta| = "
              << deltas[i];
            gate(names[i], deltas[i], abc_tol[i], d.str());
        }
    }
    else
    {
        out << "  autocorr fit: not available FAIL\n";
        all_pass = false;
    }

    out << "  bounding K [" << outcome.report.fit.bounding_k_low_db << ", " << outcome.report.fit.bounding_k_high_db
        << "] dB vs preset [" << spec.k_low_db << ", " << spec.k_high_db << "] dB; best fit "
        << outcome.report.fit.best << "\n";
    out << "roundtrip " << spec.label << ": " << (all_pass ? "PASS" : "FAIL") << "\n";
    return all_pass ? exit_ok : exit_acceptance;
}

int run_roundtrip(const RoundtripOptions& opts, std::ostream& out, std::ostream& err)
{
    std::vector<FadingPreset> table;
    try
    {
        table = resolve_preset_table(err);
    }
    catch (const std::exception&)
    {
        return exit_data;
    }

    std::vector<SimulationSpec> specs;
    if (opts.preset == "all")
    {
        for (const FadingPreset& p : table)
            specs.push_back(*lookup_spec(preset_key(p.environment, p.polarization), table));
    }
    else
    {
        auto found = lookup_spec(opts.preset, table);
        if (!found)
        {
            err << "error: unknown preset '" << opts.preset << "'\n";
            return exit_usage;
        }
        specs.push_back(*found);
    }

    fs::path base(opts.out_dir);
    fs::create_directories(base);

    int worst = exit_ok;
    std::vector<std::pair<std::string, int>> results;
    for (const SimulationSpec& spec : specs)
    {
        out << "== roundtrip " << spec.label << " (tracks " << opts.tracks << ", seed " << opts.seed << ") ==\n";
        fs::path dir = specs.size() == 1 ? base : base / spec.label;
        fs::create_directories(dir);
        int rc = run_roundtrip_single(opts, spec, dir, out, err);
        results.emplace_back(spec.label, rc);
        worst = std::max(worst, rc);
    }
    if (specs.size() > 1)
    {
        out << "== summary ==\n";
        for (const auto& [label, rc] : results)
            out << "  " << label << ": " << (rc == exit_ok ? "PASS" : "FAIL") << "\n";
    }
    return worst;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"mmwfading: 28 GHz ultrawideband small-scale fading synthesis and analysis"};
    app.require_subcommand(1);

    SimulateOptions sim;
    CLI::App* simulate = app.add_subcommand("simulate", "synthesize spatial PDP tracks");
    simulate->add_option("--preset", sim.preset, "fading preset (los-vv, los-vh, nlos-vv, nlos-vh, los-to-nlos-vv, los-to-nlos-vh)");
    auto* klo = simulate->add_option("--k-low-db", sim.k_low_db, "explicit K range lower edge [dB]");
    auto* khi = simulate->add_option("--k-high-db", sim.k_high_db, "explicit K range upper edge [dB]");
    auto* oa = simulate->add_option("--autocorr-a", sim.a, "explicit autocorrelation model A");
    auto* ob = simulate->add_option("--autocorr-b", sim.b, "explicit autocorrelation model B [1/wavelength]");
    auto* oc = simulate->add_option("--autocorr-c", sim.c, "explicit autocorrelation model C");
    simulate->add_option("--tracks", sim.tracks, "number of tracks")->check(CLI::PositiveNumber);
    simulate->add_option("--taps", sim.taps, "taps per track")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim.seed, "master seed (fixed default keeps runs reproducible)");
    simulate->add_option("--positions", sim.positions, "track positions")->check(CLI::Range(2, 100000));
    simulate->add_option("--step-mm", sim.step_mm, "track step [mm]")->check(CLI::PositiveNumber);
    simulate->add_option("--bin-ns", sim.bin_ns, "delay bin width [ns]")->check(CLI::PositiveNumber);
    simulate->add_option("--noise-floor-dbm", sim.noise_floor_dbm, "noise floor [dBm]");
    simulate->add_option("--jobs", sim.jobs, "worker threads")->check(CLI::PositiveNumber);
    simulate->add_option("--out-dir", sim.out_dir, "output directory")->required();
    simulate->add_flag("--calibrated-mapping,!--no-calibrated-mapping", sim.calibrated_mapping,
                       "window-matched correlation calibration (default off)");

    AnalyzeOptions ana;
    CLI::App* analyze = app.add_subcommand("analyze", "analyze PDP track files");
    analyze->add_option("inputs", ana.inputs, "track files")->required()->expected(-1);
    analyze->add_option("--out-dir", ana.out_dir, "output directory")->required();
    analyze->add_option("--pooling", ana.pooling, "autocorrelation pooling across tracks")
        ->check(CLI::IsMember({"per-track", "global"}));
    analyze->add_option("--max-lag", ana.max_lag, "largest autocorrelation lag [steps]")->check(CLI::PositiveNumber);
    analyze->add_option("--threshold-db", ana.threshold_db, "validity margin above the noise floor [dB]");
    analyze->add_option("--min-occupancy", ana.min_occupancy, "minimum valid positions per bin (0 = half)");
    analyze->add_option("--jobs", ana.jobs, "worker threads")->check(CLI::PositiveNumber);

    RoundtripOptions rt;
    CLI::App* roundtrip = app.add_subcommand("roundtrip", "simulate, analyze and compare against the preset");
    roundtrip->add_option("--preset", rt.preset, "preset key or 'all'")->required();
    roundtrip->add_option("--tracks", rt.tracks, "number of tracks")->check(CLI::PositiveNumber);
    roundtrip->add_option("--taps", rt.taps, "taps per track")->check(CLI::PositiveNumber);
    roundtrip->add_option("--seed", rt.seed, "master seed");
    roundtrip->add_option("--jobs", rt.jobs, "worker threads")->check(CLI::PositiveNumber);
    roundtrip->add_option("--out-dir", rt.out_dir, "output directory")->required();
    roundtrip->add_option("--pooling", rt.pooling, "autocorrelation pooling across tracks")
        ->check(CLI::IsMember({"per-track", "global"}));
    roundtrip->add_flag("--calibrated-mapping,!--no-calibrated-mapping", rt.calibrated_mapping,
                        "window-matched correlation calibration (default on)");

    std::vector<std::string> argv(args.rbegin(), args.rend()); // CLI11's vector parse consumes back to front
    try
    {
        app.parse(argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        out << app.help();
        return exit_ok;
    }
    catch (const CLI::ParseError& e)
    {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }

    sim.has_explicit = klo->count() > 0 || khi->count() > 0 || oa->count() > 0 || ob->count() > 0 || oc->count() > 0;
    if (sim.has_explicit && (klo->count() == 0 || khi->count() == 0 || oa->count() == 0 || ob->count() == 0))
    {
        // C defaults to 0 when omitted; the K range and A, B are mandatory
        err << "error: explicit parameters need --k-low-db, --k-high-db, --autocorr-a and --autocorr-b\n";
        return exit_usage;
    }

    try
    {
        if (simulate->parsed())
            return run_simulate(sim, out, err);
        if (analyze->parsed())
            return run_analyze(ana, out, err);
        if (roundtrip->parsed())
            return run_roundtrip(rt, out, err);
    }
    catch (const ParseError& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_data;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_data;
    }
    err << "error: no subcommand\n";
    return exit_usage;
}

} // namespace mmwf::cli
