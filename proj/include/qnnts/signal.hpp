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

/**
 * @file
 * Benchmark signal synthesis (13 sinusoids plus trend and uniform noise),
 * percentage-change conversion and the periodogram.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qnnts {

struct SinusoidComponent {
    double amplitude = 0.0;
    /// Cycles per time unit, in [0, 0.5].
    double frequency = 0.0;
    double phase = 0.0;
};

struct SignalSpec {
    std::vector<SinusoidComponent> components;
    double linear_gradient = 0.0;
    double quadratic_gradient = 0.0;
    double noise_coefficient = 0.0;
    std::size_t n_points = 10000;
    std::uint64_t seed = 1;
    /// Round each frequency to the nearest k / n_points before synthesis.
    bool snap_to_grid = true;

    /// ArgumentError on negative amplitude/noise, frequency outside
    /// [0, 0.5], or fewer than 2 points.
    void validate() const;
};

struct Series {
    std::vector<double> values;
    double dt = 1.0;
};

/// The 13 deterministic components (amplitude, frequency), zero phase.
[[nodiscard]] std::vector<SinusoidComponent> benchmark_components();

/// F0..F10, L0..L10, Q0..Q10 in table order.
[[nodiscard]] const std::vector<std::string> &preset_ids();

/// Spec for a preset id; ArgumentError for an unknown id.
[[nodiscard]] SignalSpec preset(std::string_view id, std::uint64_t seed,
                                std::size_t n_points = 10000);

[[nodiscard]] double snap_frequency(double frequency, std::size_t n_points);

[[nodiscard]] Series synthesize(const SignalSpec &spec);

/// out[i] = 100 (p[i+1] - p[i]) / p[i]. DataError on a non-positive price.
[[nodiscard]] Series percent_change(std::span<const double> prices);

struct PeriodogramResult {
    std::vector<double> frequencies;
    /// Amplitude-squared units: a unit sinusoid on bin k gives power[k] = 1.
    std::vector<double> power;
    /// |DFT|^2 for k = 0..N/2.
    std::vector<double> raw;
    /// Number of samples transformed (even).
    std::size_t n = 0;
    /// True when the final sample of an odd-length input was dropped.
    bool truncated = false;
};

/// ArgumentError when fewer than 4 samples.
[[nodiscard]] PeriodogramResult periodogram(std::span<const double> series,
                                            double dt = 1.0);

/// Local maxima with power > threshold, ascending frequency.
[[nodiscard]] std::vector<SinusoidComponent>
extract_peaks(const PeriodogramResult &p, double threshold);

} // namespace qnnts
