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

#include "mmwf/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "mmwf/units.hpp"

namespace mmwf
{

namespace
{

constexpr const char* track_magic = "mmwf-track format_version 1";

std::string fmt17(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_dbm(double mw)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", mw_to_dbm(mw));
    return buf;
}

std::string warnings_string(const TrackWarnings& w)
{
    std::string s;
    auto add = [&](const char* tok) {
        if (!s.empty())
            s += ',';
        s += tok;
    };
    if (w.eigenvalue_clipped)
        add("eig-clip");
    if (w.correlation_clipped)
        add("corr-clip");
    if (w.matcher_not_converged)
        add("matcher");
    return s.empty() ? "none" : s;
}

TrackWarnings parse_warnings(const std::string& s, int line_no)
{
    TrackWarnings w;
    if (s == "none")
        return w;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ','))
    {
        if (tok == "eig-clip")
            w.eigenvalue_clipped = true;
        else if (tok == "corr-clip")
            w.correlation_clipped = true;
        else if (tok == "matcher")
            w.matcher_not_converged = true;
        else
            throw ParseError("track file: unknown warning token '" + tok + "'", line_no);
    }
    return w;
}

std::string read_all(const std::filesystem::path& path, const char* what)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error(std::string(what) + ": cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_all(const std::filesystem::path& path, const std::string& data, const char* what)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error(std::string(what) + ": cannot open " + path.string() + " for writing");
    out << data;
    if (!out)
        throw std::runtime_error(std::string(what) + ": write failed for " + path.string());
}

} // namespace

void save_track(const SpatialTrackPdp& track, const std::filesystem::path& path)
{
    std::ostringstream out;
    out << track_magic << '\n';
    out << "step_m " << fmt17(track.step_m) << '\n';
    out << "wavelength_m " << fmt17(track.wavelength_m) << '\n';
    out << "bin_width_s " << fmt17(track.bin_width_s) << '\n';
    out << "noise_floor_dbm " << fmt17(track.noise_floor_dbm) << '\n';
    out << "n_positions " << track.n_positions << '\n';
    out << "n_bins " << track.n_bins << '\n';
    out << "environment " << (track.environment.empty() ? "-" : track.environment) << '\n';
    out << "polarization " << (track.polarization.empty() ? "-" : track.polarization) << '\n';
    out << "seed " << (track.seed ? std::to_string(*track.seed) : "none") << '\n';
    out << "warnings " << warnings_string(track.warnings) << '\n';
    out << "positions" << '\n';
    for (int l = 0; l < track.n_positions; ++l)
    {
        out << l;
        for (int b = 0; b < track.n_bins; ++b)
        {
            out << ' ';
            if (track.valid(l, b))
                out << fmt_dbm(track.at(l, b));
            else
                out << "NF";
        }
        out << '\n';
    }
    write_all(path, out.str(), "save_track");
}

SpatialTrackPdp load_track(const std::filesystem::path& path)
{
    std::istringstream in(read_all(path, "load_track"));
    std::string line;
    int line_no = 0;

    auto next_line = [&]() {
        if (!std::getline(in, line))
            throw ParseError("track file: unexpected end of file", line_no + 1);
        ++line_no;
    };

    next_line();
    if (line != track_magic)
        throw ParseError("track file: unsupported format/version header '" + line + "'", line_no);

    auto header_field = [&](const char* key) -> std::string {
        next_line();
        std::istringstream row(line);
        std::string k, v;
        if (!(row >> k >> v) || k != key)
            throw ParseError(std::string("track file: expected header field '") + key + "'", line_no);
        return v;
    };
    auto to_double = [&](const std::string& v, const char* key) {
        try
        {
            std::size_t used = 0;
            double d = std::stod(v, &used);
            if (used != v.size())
                throw std::invalid_argument(v);
            return d;
        }
        catch (const std::exception&)
        {
            throw ParseError(std::string("track file: non-numeric value for '") + key + "'", line_no);
        }
    };

    double step_m = to_double(header_field("step_m"), "step_m");
    double wavelength_m = to_double(header_field("wavelength_m"), "wavelength_m");
    double bin_width_s = to_double(header_field("bin_width_s"), "bin_width_s");
    double noise_floor_dbm = to_double(header_field("noise_floor_dbm"), "noise_floor_dbm");
    int n_positions = static_cast<int>(to_double(header_field("n_positions"), "n_positions"));
    int n_bins = static_cast<int>(to_double(header_field("n_bins"), "n_bins"));
    std::string environment = header_field("environment");
    std::string polarization = header_field("polarization");
    std::string seed_s = header_field("seed");
    std::string warn_s = header_field("warnings");

    next_line();
    if (line != "positions")
        throw ParseError("track file: expected 'positions' section", line_no);

    SpatialTrackPdp track(n_positions, n_bins, step_m, wavelength_m, bin_width_s, noise_floor_dbm);
    track.environment = environment;
    track.polarization = polarization;
    if (seed_s != "none")
    {
        try
        {
            track.seed = std::stoull(seed_s);
        }
        catch (const std::exception&)
        {
            throw ParseError("track file: non-numeric seed", line_no);
        }
    }
    track.warnings = parse_warnings(warn_s, line_no);

    for (int l = 0; l < n_positions; ++l)
    {
        if (!std::getline(in, line))
            throw ParseError("track file: header declares " + std::to_string(n_positions) + " positions but body has " +
                                 std::to_string(l),
                             line_no + 1);
        ++line_no;
        std::istringstream row(line);
        int idx = -1;
        if (!(row >> idx) || idx != l)
            throw ParseError("track file: expected position index " + std::to_string(l), line_no, 1);
        for (int b = 0; b < n_bins; ++b)
        {
            std::string cell;
            if (!(row >> cell))
                throw ParseError("track file: header declares " + std::to_string(n_bins) + " bins but row has " +
                                     std::to_string(b),
                                 line_no, b + 2);
            if (cell == "NF")
                continue; // sentinel stays invalid zero
            try
            {
                std::size_t used = 0;
                double dbm = std::stod(cell, &used);
                if (used != cell.size())
                    throw std::invalid_argument(cell);
                track.set_power(l, b, dbm_to_mw(dbm));
            }
            catch (const std::exception&)
            {
                throw ParseError("track file: non-numeric cell '" + cell + "'", line_no, b + 2);
            }
        }
        std::string extra;
        if (row >> extra)
            throw ParseError("track file: row has more cells than the declared " + std::to_string(n_bins) + " bins",
                             line_no, n_bins + 2);
    }
    return track;
}

namespace
{

using ordered_json = nlohmann::ordered_json;

ordered_json coefficients_to_json(const std::vector<double>& coeffs)
{
    ordered_json arr = ordered_json::array();
    for (double c : coeffs)
    {
        if (std::isnan(c))
            arr.push_back(nullptr);
        else
            arr.push_back(c);
    }
    return arr;
}

const ordered_json& require(const ordered_json& j, const char* key)
{
    auto it = j.find(key);
    if (it == j.end())
        throw std::runtime_error(std::string("report file: missing required field '") + key + "'");
    return *it;
}

} // namespace

void save_report(const AnalysisReport& report, const std::filesystem::path& path)
{
    if (report.autocorr.lags_wavelengths.empty())
        throw std::invalid_argument("save_report: empty autocorrelation estimate");
    if (report.autocorr.coefficients.size() != report.autocorr.lags_wavelengths.size() ||
        report.autocorr.bins_per_lag.size() != report.autocorr.lags_wavelengths.size())
        throw std::invalid_argument("save_report: inconsistent autocorrelation estimate");

    ordered_json j;
    j["format_version"] = 1;
    j["n_tracks"] = report.n_tracks;
    j["samples"] = {{"count", report.n_samples},
                    {"source_bins", report.source_bins},
                    {"source_positions", report.source_positions}};
    j["fit"] = {
        {"rician",
         {{"dominant_amplitude", report.fit.rician.params.dominant_amplitude},
          {"sigma_n", report.fit.rician.params.sigma},
          {"k_db", report.fit.rician.k_db},
          {"fit_error", report.fit.rician.fit_error},
          {"degenerate", report.fit.rician.degenerate}}},
        {"rayleigh", {{"sigma_n", report.fit.rayleigh.params.sigma}, {"fit_error", report.fit.rayleigh.fit_error}}},
        {"lognormal",
         {{"mean_log", report.fit.lognormal.params.mean_log},
          {"sigma_log", report.fit.lognormal.params.sigma_log},
          {"fit_error", report.fit.lognormal.fit_error},
          {"degenerate", report.fit.lognormal.degenerate}}},
        {"best", report.fit.best},
        {"bounding_k_low_db", report.fit.bounding_k_low_db},
        {"bounding_k_high_db", report.fit.bounding_k_high_db},
        {"bounding_exact", report.fit.bounding_exact},
    };
    ordered_json autoc;
    autoc["lags_wavelengths"] = report.autocorr.lags_wavelengths;
    autoc["coefficients"] = coefficients_to_json(report.autocorr.coefficients);
    autoc["bins_per_lag"] = report.autocorr.bins_per_lag;
    autoc["n_bins_averaged"] = report.autocorr.n_bins_averaged;
    autoc["decorrelation_lag_wavelengths"] =
        std::isnan(report.decorrelation_lag_wl) ? ordered_json(nullptr) : ordered_json(report.decorrelation_lag_wl);
    if (report.autocorr_fit_valid)
        autoc["model"] = {{"a", report.autocorr_fit.model.a},
                          {"b", report.autocorr_fit.model.b},
                          {"c", report.autocorr_fit.model.c},
                          {"fit_error", report.autocorr_fit.fit_error},
                          {"degenerate", report.autocorr_fit.degenerate}};
    else
        autoc["model"] = nullptr;
    j["autocorr"] = autoc;

    write_all(path, j.dump(2) + "\n", "save_report");
}

AnalysisReport load_report(const std::filesystem::path& path)
{
    ordered_json j;
    try
    {
        j = ordered_json::parse(read_all(path, "load_report"));
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw std::runtime_error(std::string("report file: ") + e.what());
    }

    AnalysisReport r;
    if (require(j, "format_version").get<int>() != 1)
        throw std::runtime_error("report file: unsupported format_version");
    r.n_tracks = require(j, "n_tracks").get<int>();
    const auto& samples = require(j, "samples");
    r.n_samples = require(samples, "count").get<int>();
    r.source_bins = require(samples, "source_bins").get<int>();
    r.source_positions = require(samples, "source_positions").get<int>();

    const auto& fit = require(j, "fit");
    const auto& ric = require(fit, "rician");
    r.fit.rician.params =
        RicianParams{require(ric, "dominant_amplitude").get<double>(), require(ric, "sigma_n").get<double>()};
    r.fit.rician.k_db = require(ric, "k_db").get<double>();
    r.fit.rician.fit_error = require(ric, "fit_error").get<double>();
    r.fit.rician.degenerate = require(ric, "degenerate").get<bool>();
    const auto& ray = require(fit, "rayleigh");
    r.fit.rayleigh.params = RayleighParams{require(ray, "sigma_n").get<double>()};
    r.fit.rayleigh.fit_error = require(ray, "fit_error").get<double>();
    const auto& logn = require(fit, "lognormal");
    r.fit.lognormal.params =
        LognormalParams{require(logn, "mean_log").get<double>(), require(logn, "sigma_log").get<double>()};
    r.fit.lognormal.fit_error = require(logn, "fit_error").get<double>();
    r.fit.lognormal.degenerate = require(logn, "degenerate").get<bool>();
    r.fit.best = require(fit, "best").get<std::string>();
    r.fit.bounding_k_low_db = require(fit, "bounding_k_low_db").get<int>();
    r.fit.bounding_k_high_db = require(fit, "bounding_k_high_db").get<int>();
    r.fit.bounding_exact = require(fit, "bounding_exact").get<bool>();

    const auto& autoc = require(j, "autocorr");
    r.autocorr.lags_wavelengths = require(autoc, "lags_wavelengths").get<std::vector<double>>();
    if (r.autocorr.lags_wavelengths.empty())
        throw std::runtime_error("report file: empty autocorrelation estimate");
    for (const auto& c : require(autoc, "coefficients"))
        r.autocorr.coefficients.push_back(c.is_null() ? std::numeric_limits<double>::quiet_NaN() : c.get<double>());
    r.autocorr.bins_per_lag = require(autoc, "bins_per_lag").get<std::vector<int>>();
    if (r.autocorr.coefficients.size() != r.autocorr.lags_wavelengths.size() ||
        r.autocorr.bins_per_lag.size() != r.autocorr.lags_wavelengths.size())
        throw std::runtime_error("report file: inconsistent autocorrelation arrays");
    r.autocorr.n_bins_averaged = require(autoc, "n_bins_averaged").get<int>();
    const auto& dec = require(autoc, "decorrelation_lag_wavelengths");
    r.decorrelation_lag_wl = dec.is_null() ? std::numeric_limits<double>::quiet_NaN() : dec.get<double>();
    const auto& model = require(autoc, "model");
    if (model.is_null())
    {
        r.autocorr_fit_valid = false;
    }
    else
    {
        r.autocorr_fit.model = AutocorrModel{require(model, "a").get<double>(), require(model, "b").get<double>(),
                                             require(model, "c").get<double>()};
        r.autocorr_fit.fit_error = require(model, "fit_error").get<double>();
        r.autocorr_fit.degenerate = require(model, "degenerate").get<bool>();
    }
    return r;
}

void export_plot_csv(const AutocorrEstimate& estimate, const std::filesystem::path& path)
{
    if (estimate.lags_wavelengths.empty())
        throw std::invalid_argument("export_plot_csv: empty autocorrelation estimate");
    std::ostringstream out;
    out << "lag_wavelengths,coefficient\n";
    for (std::size_t i = 0; i < estimate.lags_wavelengths.size(); ++i)
    {
        out << fmt17(estimate.lags_wavelengths[i]) << ',';
        if (std::isnan(estimate.coefficients[i]))
            out << "nan";
        else
            out << fmt17(estimate.coefficients[i]);
        out << '\n';
    }
    write_all(path, out.str(), "export_plot_csv");
}

void export_plot_csv(const FadingSampleSet& samples, const std::filesystem::path& path)
{
    if (samples.samples.empty())
        throw std::invalid_argument("export_plot_csv: empty sample set");
    std::vector<double> v;
    v.reserve(samples.samples.size());
    for (double p : samples.samples)
        v.push_back(std::sqrt(p));
    std::sort(v.begin(), v.end());
    std::ostringstream out;
    out << "voltage_ratio,cdf\n";
    double n = static_cast<double>(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out << fmt17(v[i]) << ',' << fmt17((static_cast<double>(i) + 0.5) / n) << '\n';
    write_all(path, out.str(), "export_plot_csv");
}

void export_plot_csv(const AutocorrModel& model, std::span<const double> lags_wavelengths,
                     const std::filesystem::path& path)
{
    if (lags_wavelengths.empty())
        throw std::invalid_argument("export_plot_csv: empty lag grid");
    std::ostringstream out;
    out << "lag_wavelengths,model_coefficient\n";
    for (double lag : lags_wavelengths)
        out << fmt17(lag) << ',' << fmt17(model.eval(lag)) << '\n';
    write_all(path, out.str(), "export_plot_csv");
}

void export_plot_csv(const RicianParams& params, int n_points, double x_max, const std::filesystem::path& path)
{
    if (n_points < 2 || !(x_max > 0.0))
        throw std::invalid_argument("export_plot_csv: need at least 2 points and positive x_max");
    std::ostringstream out;
    out << "voltage_ratio,cdf\n";
    for (int i = 0; i < n_points; ++i)
    {
        double x = x_max * static_cast<double>(i) / static_cast<double>(n_points - 1);
        out << fmt17(x) << ',' << fmt17(rician_cdf(x, params)) << '\n';
    }
    write_all(path, out.str(), "export_plot_csv");
}

} // namespace mmwf
