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

#include <cstddef>
#include <utility>

namespace qnnts::kernels::detail {

/// Spread `i` so that bit position `bit` is a zero.
inline std::size_t insert_zero(std::size_t i, std::size_t bit) {
    const std::size_t low = (std::size_t{1} << bit) - 1;
    return ((i & ~low) << 1) | (i & low);
}

/// Base index of the `i`-th group for a two-qubit gate (both target bits 0).
inline std::size_t insert_zero2(std::size_t i, std::size_t lo, std::size_t hi) {
    return insert_zero(insert_zero(i, lo), hi);
}

inline std::pair<std::size_t, std::size_t> ordered(std::size_t a,
                                                   std::size_t b) {
    return a < b ? std::pair{a, b} : std::pair{b, a};
}

} // namespace qnnts::kernels::detail
