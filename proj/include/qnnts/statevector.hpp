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
 * Dense statevector over n qubits and the four exponentiated gate families
 * used by the forecasting circuit: X^t, XX^t, YY^t and ZZ^t.
 *
 * Ordering: qubit i is the i-th least-significant bit of the amplitude index,
 * so for |c b a> the rightmost symbol varies fastest.
 */
#pragma once

#include "qnnts/kernels.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace qnnts {

using cplx = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 24;

enum class GateKind { XPow, XXPow, YYPow, ZZPow };

[[nodiscard]] std::string_view to_string(GateKind kind);
/// Accepts "X", "XX", "YY", "ZZ" (and the "...Pow" spellings).
[[nodiscard]] GateKind gate_kind_from_string(std::string_view name);
[[nodiscard]] constexpr std::size_t arity(GateKind kind) {
    return kind == GateKind::XPow ? 1 : 2;
}

struct GateOp {
    GateKind kind;
    double exponent;
    std::array<std::size_t, 2> targets;

    static GateOp x_pow(std::size_t target, double t) {
        return {GateKind::XPow, t, {target, target}};
    }
    static GateOp two_qubit(GateKind kind, std::size_t first,
                            std::size_t second, double t) {
        return {kind, t, {first, second}};
    }
};

/// 2x2 or 4x4 row-major. For two-qubit gates the local basis index is
/// 2*bit(targets[0]) + bit(targets[1]).
struct GateMatrix {
    std::size_t dim = 2;
    std::array<cplx, 16> entries{};

    [[nodiscard]] cplx operator()(std::size_t r, std::size_t c) const {
        return entries[r * dim + c];
    }
    cplx &operator()(std::size_t r, std::size_t c) {
        return entries[r * dim + c];
    }
};

/// Exact matrix of the gate. With f = e^{i pi t/2}, c = f cos(pi t/2) and
/// s = -i f sin(pi t/2): X^t = [[c, s], [s, c]], so X^1 is the bit flip.
[[nodiscard]] GateMatrix gate_matrix(const GateOp &op);

/// P (x) P for the two-qubit families (X(x)X, Y(x)Y, Z(x)Z); X for XPow.
/// Each gate equals e^{i pi t/2} exp(-i pi t/2 * generator).
[[nodiscard]] GateMatrix generator_matrix(GateKind kind);

[[nodiscard]] bool is_unitary(const GateMatrix &m, double tol);

class Statevector {
  public:
    /// |0...0> on n qubits; throws ConfigError outside [1, kMaxQubits].
    explicit Statevector(std::size_t n_qubits);

    /// Takes ownership of explicit amplitudes (length must be 2^n_qubits).
    Statevector(std::size_t n_qubits, std::vector<cplx> amplitudes);

    [[nodiscard]] std::size_t n_qubits() const { return n_qubits_; }
    [[nodiscard]] std::size_t size() const { return amps_.size(); }
    [[nodiscard]] std::span<const cplx> amplitudes() const { return amps_; }
    [[nodiscard]] std::span<cplx> amplitudes() { return amps_; }
    [[nodiscard]] cplx operator[](std::size_t i) const { return amps_[i]; }

    void apply(const GateOp &op);
    /// Applies the inverse of `op`.
    void apply_adjoint(const GateOp &op);
    /// Applies an arbitrary 4x4 (or 2x2 when arity 1) on the given targets.
    void apply_matrix(const GateMatrix &m, std::array<std::size_t, 2> targets);

    [[nodiscard]] double norm_sq() const;
    [[nodiscard]] double prob_one(std::size_t qubit) const;

    /// Zeroes every amplitude whose bit `qubit` is 0 (projector onto |1>).
    void project_one(std::size_t qubit);

  private:
    std::size_t n_qubits_;
    std::vector<cplx> amps_;
};

[[nodiscard]] Statevector new_zero_state(std::size_t n_qubits);

/// Validates the op against an n-qubit register (ArgumentError otherwise).
void check_gate(const GateOp &op, std::size_t n_qubits);

/// Functional form of Statevector::apply.
[[nodiscard]] Statevector apply_gate(Statevector state, const GateOp &op);

[[nodiscard]] double prob_one(const Statevector &state, std::size_t qubit);

/// <bra| M_targets |ket> without materialising M|ket>.
[[nodiscard]] cplx matrix_element(const Statevector &bra,
                                  const Statevector &ket, const GateMatrix &m,
                                  std::array<std::size_t, 2> targets);

/// Test oracle: builds the full 2^n x 2^n unitary from Kronecker products of
/// 2x2 blocks and multiplies. Refuses n_qubits > 4.
[[nodiscard]] Statevector dense_oracle_apply(const Statevector &state,
                                             const GateOp &op);

} // namespace qnnts
