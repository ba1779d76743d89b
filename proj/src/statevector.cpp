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
#include "qnnts/statevector.hpp"

#include "qnnts/error.hpp"
#include "qnnts/numeric.hpp"

#include <cmath>
#include <string>

namespace qnnts {

std::string_view to_string(GateKind kind) {
    switch (kind) {
    case GateKind::XPow:
        return "X";
    case GateKind::XXPow:
        return "XX";
    case GateKind::YYPow:
        return "YY";
    case GateKind::ZZPow:
        return "ZZ";
    }
    return "?";
}

GateKind gate_kind_from_string(std::string_view name) {
    if (name == "X" || name == "XPow") {
        return GateKind::XPow;
    }
    if (name == "XX" || name == "XXPow") {
        return GateKind::XXPow;
    }
    if (name == "YY" || name == "YYPow") {
        return GateKind::YYPow;
    }
    if (name == "ZZ" || name == "ZZPow") {
        return GateKind::ZZPow;
    }
    throw ArgumentError("unknown gate kind '" + std::string(name) + "'");
}

GateMatrix gate_matrix(const GateOp &op) {
    const auto [sin_half, cos_half] = sincos_pi(op.exponent / 2.0);
    const cplx f{cos_half, sin_half};
    const cplx c = f * cos_half;
    const cplx s = cplx{0.0, -1.0} * f * sin_half;

    GateMatrix m;
    switch (op.kind) {
    case GateKind::XPow:
        m.dim = 2;
        m(0, 0) = c;
        m(0, 1) = s;
        m(1, 0) = s;
        m(1, 1) = c;
        break;
    case GateKind::XXPow:
        m.dim = 4;
        m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = c;
        m(0, 3) = m(1, 2) = m(2, 1) = m(3, 0) = s;
        break;
    case GateKind::YYPow:
        m.dim = 4;
        m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = c;
        m(1, 2) = m(2, 1) = s;
        m(0, 3) = m(3, 0) = -s;
        break;
    case GateKind::ZZPow: {
        const auto [sin_full, cos_full] = sincos_pi(op.exponent);
        const cplx w{cos_full, sin_full};
        m.dim = 4;
        m(0, 0) = m(3, 3) = 1.0;
        m(1, 1) = m(2, 2) = w;
        break;
    }
    }
    return m;
}

GateMatrix generator_matrix(GateKind kind) {
    GateMatrix m;
    switch (kind) {
    case GateKind::XPow:
        m.dim = 2;
        m(0, 1) = m(1, 0) = 1.0;
        break;
    case GateKind::XXPow:
        m.dim = 4;
        m(0, 3) = m(1, 2) = m(2, 1) = m(3, 0) = 1.0;
        break;
    case GateKind::YYPow:
        m.dim = 4;
        m(1, 2) = m(2, 1) = 1.0;
        m(0, 3) = m(3, 0) = -1.0;
        break;
    case GateKind::ZZPow:
        m.dim = 4;
        m(0, 0) = m(3, 3) = 1.0;
        m(1, 1) = m(2, 2) = -1.0;
        break;
    }
    return m;
}

bool is_unitary(const GateMatrix &m, double tol) {
    for (std::size_t r = 0; r < m.dim; ++r) {
        for (std::size_t c = 0; c < m.dim; ++c) {
            cplx acc{0.0, 0.0};
            for (std::size_t k = 0; k < m.dim; ++k) {
                acc += std::conj(m(k, r)) * m(k, c);
            }
            const cplx expected = r == c ? 1.0 : 0.0;
            if (std::abs(acc - expected) > tol) {
                return false;
            }
        }
    }
    return true;
}

namespace {

void check_qubit_count(std::size_t n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ConfigError("qubit count " + std::to_string(n_qubits) +
                          " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
}

GateMatrix adjoint(const GateMatrix &m) {
    GateMatrix out;
    out.dim = m.dim;
    for (std::size_t r = 0; r < m.dim; ++r) {
        for (std::size_t c = 0; c < m.dim; ++c) {
            out(r, c) = std::conj(m(c, r));
        }
    }
    return out;
}

} // namespace

Statevector::Statevector(std::size_t n_qubits) : n_qubits_(n_qubits) {
    check_qubit_count(n_qubits);
    amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    amps_[0] = 1.0;
}

Statevector::Statevector(std::size_t n_qubits, std::vector<cplx> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    check_qubit_count(n_qubits);
    QNNTS_REQUIRE(amps_.size() == (std::size_t{1} << n_qubits),
                  "amplitude count does not match 2^n_qubits");
}

void Statevector::apply_matrix(const GateMatrix &m,
                               std::array<std::size_t, 2> targets) {
    const auto &k = kernels::active();
    if (m.dim == 2) {
        k.apply_1q(amps_.data(), n_qubits_, targets[0], m.entries.data());
    } else {
        k.apply_2q(amps_.data(), n_qubits_, targets[0], targets[1],
                   m.entries.data());
    }
}

void Statevector::apply(const GateOp &op) {
    check_gate(op, n_qubits_);
    const GateMatrix m = gate_matrix(op);
    if (op.kind == GateKind::ZZPow) {
        const cplx diag[4] = {m(0, 0), m(1, 1), m(2, 2), m(3, 3)};
        kernels::active().apply_2q_diag(amps_.data(), n_qubits_, op.targets[0],
                                        op.targets[1], diag);
        return;
    }
    apply_matrix(m, op.targets);
}

void Statevector::apply_adjoint(const GateOp &op) {
    check_gate(op, n_qubits_);
    const GateMatrix m = adjoint(gate_matrix(op));
    if (op.kind == GateKind::ZZPow) {
        const cplx diag[4] = {m(0, 0), m(1, 1), m(2, 2), m(3, 3)};
        kernels::active().apply_2q_diag(amps_.data(), n_qubits_, op.targets[0],
                                        op.targets[1], diag);
        return;
    }
    apply_matrix(m, op.targets);
}

double Statevector::norm_sq() const {
    return kernels::active().norm_sq(amps_.data(), amps_.size());
}

double Statevector::prob_one(std::size_t qubit) const {
    QNNTS_REQUIRE(qubit < n_qubits_, "qubit index " + std::to_string(qubit) +
                                         " out of range");
    return kernels::active().prob_one(amps_.data(), n_qubits_, qubit);
}

void Statevector::project_one(std::size_t qubit) {
    QNNTS_REQUIRE(qubit < n_qubits_, "qubit index out of range");
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & bit) == 0) {
            amps_[i] = 0.0;
        }
    }
}

Statevector new_zero_state(std::size_t n_qubits) {
    return Statevector(n_qubits);
}

void check_gate(const GateOp &op, std::size_t n_qubits) {
    QNNTS_REQUIRE(op.targets[0] < n_qubits,
                  "gate target " + std::to_string(op.targets[0]) +
                      " out of range for " + std::to_string(n_qubits) +
                      " qubits");
    if (arity(op.kind) == 2) {
        QNNTS_REQUIRE(op.targets[1] < n_qubits,
                      "gate target " + std::to_string(op.targets[1]) +
                          " out of range for " + std::to_string(n_qubits) +
                          " qubits");
        QNNTS_REQUIRE(op.targets[0] != op.targets[1],
                      "two-qubit gate needs distinct targets");
    }
}

Statevector apply_gate(Statevector state, const GateOp &op) {
    state.apply(op);
    return state;
}

double prob_one(const Statevector &state, std::size_t qubit) {
    return state.prob_one(qubit);
}

cplx matrix_element(const Statevector &bra, const Statevector &ket,
                    const GateMatrix &m, std::array<std::size_t, 2> targets) {
    QNNTS_REQUIRE(bra.n_qubits() == ket.n_qubits(), "register size mismatch");
    QNNTS_REQUIRE(m.dim == 4, "matrix_element expects a two-qubit matrix");
    return kernels::active().inner_2q(bra.amplitudes().data(),
                                      ket.amplitudes().data(), ket.n_qubits(),
                                      targets[0], targets[1], m.entries.data());
}

namespace {

using Dense = std::vector<cplx>; // square, row-major

Dense kron(const Dense &a, std::size_t da, const Dense &b, std::size_t db) {
    const std::size_t d = da * db;
    Dense out(d * d);
    for (std::size_t ar = 0; ar < da; ++ar) {
        for (std::size_t ac = 0; ac < da; ++ac) {
            const cplx av = a[ar * da + ac];
            for (std::size_t br = 0; br < db; ++br) {
                for (std::size_t bc = 0; bc < db; ++bc) {
                    out[(ar * db + br) * d + (ac * db + bc)] =
                        av * b[br * db + bc];
                }
            }
        }
    }
    return out;
}

Dense elementary(std::size_t p, std::size_t q) {
    Dense e(4, 0.0);
    e[p * 2 + q] = 1.0;
    return e;
}

} // namespace

Statevector dense_oracle_apply(const Statevector &state, const GateOp &op) {
    const std::size_t n = state.n_qubits();
    if (n > 4) {
        throw ConfigError("dense oracle is limited to 4 qubits");
    }
    check_gate(op, n);
    const GateMatrix m = gate_matrix(op);
    const std::size_t dim = std::size_t{1} << n;
    const Dense identity{1.0, 0.0, 0.0, 1.0};

    // U = sum_{p,q} m(p,q) * (E_{n-1} (x) ... (x) E_0)
    Dense full(dim * dim, 0.0);
    for (std::size_t p = 0; p < m.dim; ++p) {
        for (std::size_t q = 0; q < m.dim; ++q) {
            if (m(p, q) == cplx{0.0, 0.0}) {
                continue;
            }
            Dense term{1.0};
            std::size_t term_dim = 1;
            for (std::size_t k = n; k-- > 0;) {
                Dense factor = identity;
                if (m.dim == 2 && k == op.targets[0]) {
                    factor = elementary(p, q);
                } else if (m.dim == 4 && k == op.targets[0]) {
                    factor = elementary(p >> 1, q >> 1);
                } else if (m.dim == 4 && k == op.targets[1]) {
                    factor = elementary(p & 1U, q & 1U);
                }
                term = kron(term, term_dim, factor, 2);
                term_dim *= 2;
            }
            for (std::size_t i = 0; i < full.size(); ++i) {
                full[i] += m(p, q) * term[i];
            }
        }
    }

    std::vector<cplx> out(dim, 0.0);
    const auto in = state.amplitudes();
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            out[r] += full[r * dim + c] * in[c];
        }
    }
    return Statevector(n, std::move(out));
}

} // namespace qnnts
