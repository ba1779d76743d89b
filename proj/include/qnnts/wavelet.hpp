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
 * Twelfth-order derivative-of-Gaussian wavelet and the continuous wavelet
 * transform on an octave/voice scale grid.
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qnnts {

/// Unit-energy, zero-mean, even.
[[nodiscard]] double dog12(double t);

/// |t| beyond which dog12 is treated as zero (|dog12| < 1e-30 there).
inline constexpr double kDog12Support = 14.0;

struct CwtResult {
    /// alpha * 2^(oct-1) * 2^(voc/nvoc), oct-major, strictly increasing.
    std::vector<double> scales;
    /// Row-major, scales.size() x n.
    std::vector<double> coefficients;
    std::size_t n = 0;
    /// Per scale: coefficients closer than this to either end see the zero
    /// padding outside the series.
    std::vector<std::size_t> edge_margin;

    [[nodiscard]] double at(std::size_t scale, std::size_t u) const {
        return coefficients[scale * n + u];
    }
};

[[nodiscard]] std::vector<double> cwt_scales(std::size_t noct,
                                             std::size_t nvoc, double alpha);

/// w(u, s) = s^(-1/2) sum_i x_i dog12((i - u) / s), zero outside [0, N).
/// ArgumentError when noct or nvoc is 0, alpha <= 0, or the series is empty.
[[nodiscard]] CwtResult cwt(std::span<const double> series, std::size_t noct = 12,
                            std::size_t nvoc = 12, double alpha = 2.0);

} // namespace qnnts
