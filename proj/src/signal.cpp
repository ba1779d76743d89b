// Copyright 2026 The qnnts Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnnts/signal.hpp"

#include "qnnts/error.hpp"
#include "qnnts/rng.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

namespace qnnts {
namespace {

struct Preset {
    std::string_view id;
    double linear;
    double quadratic;
    double noise;
};

// clang-format off
constexpr std::array<Preset, 15> kPresets{{
    {"F0", 0.0, 0.0, 0.0}, {"F2", 0.0, 0.0, 0.2}, {"F5", 0.0, 0.0, 0.5},
    {"F8", 0.0, 0.0, 0.8}, {"F10", 0.0, 0.0, 1.0},
    {"L0", 5e-2, 0.0, 0.0}, {"L2", 5e-2, 0.0, 0.2}, {"L5", 5e-2, 0.0, 0.5},
    {"L8", 5e-2, 0.0, 0.8}, {"L10", 5e-2, 0.0, 1.0},
    {"Q0", 0.0, 5e-5, 0.0}, {"Q2", 0.0, 5e-5, 0.2}, {"Q5", 0.0, 5e-5, 0.5},
    {"Q8", 0.0, 5e-5, 0.8}, {"Q10", 0.0, 5e-5, 1.0},
}};
// clang-format on

// FFTW planning is not thread-safe.
std::mutex &planner_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

void SignalSpec::validate() const {
    QNNTS_REQUIRE(n_points >= 2, "signal needs at least 2 points");
    QNNTS_REQUIRE(noise_coefficient >= 0.0 && std::isfinite(noise_coefficient),
                  "noise coefficient must be >= 0");
    for (const auto &c : components) {
        QNNTS_REQUIRE(c.amplitude >= 0.0, "sinusoid amplitude must be >= 0");
        QNNTS_REQUIRE(c.frequency >= 0.0 && c.frequency <= 0.5,
                      "sinusoid frequency must lie in [0, 0.5]");
    }
}

std::vector<SinusoidComponent> benchmark_components() {
    return {{7.37, 0.009, 0.0}, {7.22, 0.052, 0.0}, {7.52, 0.063, 0.0},
            {7.58, 0.065, 0.0}, {7.33, 0.115, 0.0}, {7.68, 0.143, 0.0},
            {7.65, 0.146, 0.0}, {7.10, 0.229, 0.0}, {7.34, 0.233, 0.0},
            {7.58, 0.256, 0.0}, {7.72, 0.259, 0.0}, {7.30, 0.292, 0.0},
            {7.09, 0.445, 0.0}};
}

const std::vector<std::string> &preset_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto &p : kPresets) {
            v.emplace_back(p.id);
        }
        return v;
    }();
    return ids;
}

SignalSpec preset(std::string_view id, std::uint64_t seed,
                  std::size_t n_points) {
    const auto it = std::find_if(kPresets.begin(), kPresets.end(),
                                 [&](const Preset &p) { return p.id == id; });
    if (it == kPresets.end()) {
        throw ArgumentError("unknown signal id '" + std::string(id) + "'");
    }
    SignalSpec spec;
    spec.components = benchmark_components();
    spec.linear_gradient = it->linear;
    spec.quadratic_gradient = it->quadratic;
    spec.noise_coefficient = it->noise;
    spec.n_points = n_points;
    spec.seed = seed;
    return spec;
}

double snap_frequency(double frequency, std::size_t n_points) {
    const double n = static_cast<double>(n_points);
    return std::round(frequency * n) / n;
}

Series synthesize(const SignalSpec &spec) {
    spec.validate();
    const std::size_t n = spec.n_points;
    std::vector<double> x(n, 0.0);
    for (const auto &c : spec.components) {
        const double f =
            spec.snap_to_grid ? snap_frequency(c.frequency, n) : c.frequency;
        for (std::size_t i = 0; i < n; ++i) {
            // Reduce the cycle count first so large i keeps full precision.
            double cycles = f * static_cast<double>(i);
            cycles -= std::floor(cycles);
            x[i] += c.amplitude *
                    std::sin(2.0 * std::numbers::pi * cycles + c.phase);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i);
        x[i] += spec.linear_gradient * t + spec.quadratic_gradient * t * t;
    }
    if (spec.noise_coefficient > 0.0) {
        const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
        const double range = *hi - *lo;
        Rng rng(spec.seed);
        for (double &v : x) {
            v += spec.noise_coefficient * range * rng.uniform01();
        }
    }
    return {std::move(x), 1.0};
}

Series percent_change(std::span<const double> prices) {
    QNNTS_REQUIRE(prices.size() >= 2, "percent_change needs >= 2 prices");
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!(prices[i] > 0.0)) {
            throw DataError("non-positive price", i + 1);
        }
    }
    Series out;
    out.values.resize(prices.size() - 1);
    for (std::size_t i = 0; i + 1 < prices.size(); ++i) {
        out.values[i] = 100.0 * (prices[i + 1] - prices[i]) / prices[i];
    }
    return out;
}

PeriodogramResult periodogram(std::span<const double> series, double dt) {
    QNNTS_REQUIRE(series.size() >= 4, "periodogram needs at least 4 samples");
    QNNTS_REQUIRE(dt > 0.0, "periodogram: dt must be positive");
    PeriodogramResult r;
    r.truncated = series.size() % 2 == 1;
    r.n = series.size() - (r.truncated ? 1 : 0);
    const std::size_t n = r.n;
    const std::size_t bins = n / 2 + 1;

    std::unique_ptr<double, decltype(&fftw_free)> in(fftw_alloc_real(n),
                                                     &fftw_free);
    std::unique_ptr<fftw_complex, decltype(&fftw_free)> out(
        fftw_alloc_complex(bins), &fftw_free);
    fftw_plan plan = nullptr;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(),
                                    FFTW_ESTIMATE);
    }
    std::copy_n(series.begin(), n, in.get());
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }

    const double nd = static_cast<double>(n);
    r.frequencies.resize(bins);
    r.power.resize(bins);
    r.raw.resize(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        const double re = out.get()[k][0];
        const double im = out.get()[k][1];
        r.raw[k] = re * re + im * im;
        const bool edge = k == 0 || k == n / 2;
        const double scale = edge ? 1.0 / nd : 2.0 / nd;
        r.power[k] = scale * scale * r.raw[k];
        r.frequencies[k] = static_cast<double>(k) / (nd * dt);
    }
    return r;
}

std::vector<SinusoidComponent> extract_peaks(const PeriodogramResult &p,
                                             double threshold) {
    QNNTS_REQUIRE(threshold > 0.0, "peak threshold must be positive");
    std::vector<SinusoidComponent> peaks;
    const auto &pw = p.power;
    for (std::size_t k = 0; k < pw.size(); ++k) {
        if (!(pw[k] > threshold)) {
            continue;
        }
        const bool left = k == 0 || pw[k] > pw[k - 1];
        const bool right = k + 1 == pw.size() || pw[k] >= pw[k + 1];
        if (left && right) {
            peaks.push_back({std::sqrt(pw[k]), p.frequencies[k], 0.0});
        }
    }
    return peaks;
}

} // namespace qnnts
