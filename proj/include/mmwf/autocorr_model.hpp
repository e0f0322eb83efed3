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

#ifndef MMWF_AUTOCORR_MODEL_HPP
#define MMWF_AUTOCORR_MODEL_HPP

#include <cmath>
#include <stdexcept>

namespace mmwf
{

// Exponential spatial-correlation model f(dx) = a exp(-b dx) - c, with dx in
// wavelengths. f(0) = a - c may exceed 1 (the bundled LOS-to-NLOS V-V
// constants give 1.2); only the coefficient ranges are enforced so the MMSE
// fitter can explore its full grid.
struct AutocorrModel
{
    AutocorrModel() = default;

    AutocorrModel(double a_, double b_, double c_) : a(a_), b(b_), c(c_)
    {
        if (!(a >= 0.0 && a <= 1.2))
            throw std::invalid_argument("AutocorrModel: a must be in [0, 1.2]");
        if (!(b >= 0.0))
            throw std::invalid_argument("AutocorrModel: b must be >= 0");
        if (!(c >= -0.5 && c <= 0.5))
            throw std::invalid_argument("AutocorrModel: c must be in [-0.5, 0.5]");
    }

    double a = 1.0;
    double b = 0.0; // 1/wavelength
    double c = 0.0;

    double eval(double dx_wavelengths) const { return a * std::exp(-b * dx_wavelengths) - c; }
};

inline double autocorr_model_eval(const AutocorrModel& model, double dx_wavelengths)
{
    if (!(dx_wavelengths >= 0.0))
        throw std::domain_error("autocorr_model_eval: dx must be >= 0");
    return model.eval(dx_wavelengths);
}

} // namespace mmwf

#endif
