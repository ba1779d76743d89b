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

#include "qnnts/rng.hpp"
#include "qnnts/statevector.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace qnnts::test {

inline std::vector<cplx> random_amplitudes(std::size_t n_qubits, Rng &rng) {
    std::vector<cplx> a(std::size_t{1} << n_qubits);
    double norm = 0.0;
    for (auto &z : a) {
        z = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        norm += std::norm(z);
    }
    for (auto &z : a) {
        z /= std::sqrt(norm);
    }
    return a;
}

inline Statevector random_state(std::size_t n_qubits, Rng &rng) {
    return Statevector(n_qubits, random_amplitudes(n_qubits, rng));
}

inline GateOp random_gate(std::size_t n_qubits, Rng &rng) {
    const auto kind = static_cast<GateKind>(rng.below(4));
    const double t = rng.uniform(-3.0, 3.0);
    const std::size_t a = rng.below(n_qubits);
    if (kind == GateKind::XPow) {
        return GateOp::x_pow(a, t);
    }
    std::size_t b = rng.below(n_qubits - 1);
    if (b >= a) {
        ++b;
    }
    return GateOp::two_qubit(kind, a, b, t);
}

inline double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

} // namespace qnnts::test
