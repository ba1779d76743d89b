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
#pragma once

#include <cmath>
#include <numbers>
#include <utility>

namespace qnnts {

/// {sin(pi x), cos(pi x)} with exact results at multiples of 1/2.
inline std::pair<double, double> sincos_pi(double x) {
    const double quarters = std::nearbyint(2.0 * x);
    const double rem = x - 0.5 * quarters; // in [-1/4, 1/4]
    const double s = std::sin(std::numbers::pi * rem);
    const double c = std::cos(std::numbers::pi * rem);
    const long q = static_cast<long>(std::fmod(quarters, 4.0));
    switch ((q % 4 + 4) % 4) {
    case 0:
        return {s, c};
    case 1:
        return {c, -s};
    case 2:
        return {-s, -c};
    default:
        return {-c, s};
    }
}

} // namespace qnnts
