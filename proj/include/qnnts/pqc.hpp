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
 * Parameterised-circuit regressor: 16 input qubits plus one readout qubit,
 * each input encoded with X^a, followed by layers of two-qubit gates that
 * couple every input to the readout. The prediction is P(readout = 1).
 */
#pragma once

#include "qnnts/statevector.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace qnnts {

struct PqcTopology {
    std::size_t n_inputs = 16;
    std::vector<GateKind> layers{GateKind::XXPow, GateKind::ZZPow,
                                 GateKind::YYPow, GateKind::XXPow,
                                 GateKind::ZZPow, GateKind::YYPow};

    [[nodiscard]] std::size_t param_count() const {
        return n_inputs * layers.size();
    }
    [[nodiscard]] std::size_t readout() const { return n_inputs; }
    [[nodiscard]] std::size_t n_qubits() const { return n_inputs + 1; }

    /// ConfigError on an empty schedule, a single-qubit layer kind, or a
    /// register larger than kMaxQubits.
    void validate() const;
};

/// params[l * n_inputs + j] is the exponent of the layer-l gate on
/// (input j, readout).
struct PqcModel {
    PqcTopology topology;
    std::vector<double> params;
    std::uint64_t seed = 0;

    /// Zero parameters.
    explicit PqcModel(PqcTopology topo = {});

    /// Parameters drawn uniformly from [0, 2) with the given seed.
    static PqcModel initialized(PqcTopology topo, std::uint64_t seed);

    [[nodiscard]] double param(std::size_t layer, std::size_t input) const {
        return params[layer * topology.n_inputs + input];
    }
    double &param(std::size_t layer, std::size_t input) {
        return params[layer * topology.n_inputs + input];
    }
};

struct EncodedSample {
    std::vector<double> exponents;
};

/// Median with the mean of the two central order statistics for even sizes.
[[nodiscard]] double median(std::span<const double> values);

/// exponents[j] = clamp(window[j] - median(window) + 0.5, 0, 1).
[[nodiscard]] EncodedSample encode(std::span<const double> window,
                                   std::size_t n_inputs = 16);

/// Gate list of the full circuit: encoding gates first, then the layers in
/// schedule order with inputs ascending.
[[nodiscard]] std::vector<GateOp> build_circuit(const PqcModel &model,
                                                const EncodedSample &sample);

enum class GradientEngine {
    /// Full (n_inputs+1)-qubit statevector; adjoint sweep for gradients.
    Statevector,
    /// Readout-branch expansion; exact, far cheaper for this topology.
    Branch,
};

[[nodiscard]] GradientEngine gradient_engine_from_string(std::string_view s);
[[nodiscard]] std::string_view to_string(GradientEngine engine);

/// Reference forward pass by statevector simulation.
[[nodiscard]] double forward(const PqcModel &model, const EncodedSample &sample);

struct ValueAndGradient {
    double value = 0.0;
    std::vector<double> gradient;
};

/// d forward / d params by adjoint differentiation over the statevector.
[[nodiscard]] ValueAndGradient adjoint_gradient(const PqcModel &model,
                                                const EncodedSample &sample);

/**
 * Exact evaluator that never materialises the 2^(n+1) statevector.
 *
 * Every layer gate is exp(-i theta P_j (x) P_r) up to global phase, so once
 * the readout is resolved in the eigenbasis of P_r the layer acts as a
 * product of single-qubit rotations on the inputs. Expanding the readout
 * over the eigenbasis of each layer gives at most 2^L branches, each a
 * product state on the inputs; P(readout = 1) is a Hermitian form over
 * branch pairs whose Gram entries factor over inputs.
 *
 * Branch coefficients depend only on the layer schedule and are computed
 * once per topology. Instances are immutable and safe to share.
 */
class BranchEvaluator {
  public:
    explicit BranchEvaluator(const PqcTopology &topology);

    [[nodiscard]] double forward(std::span<const double> params,
                                 const EncodedSample &sample) const;

    /// Writes d forward / d params into `grad` (size param_count) and
    /// returns the forward value.
    double value_and_gradient(std::span<const double> params,
                              const EncodedSample &sample,
                              std::span<double> grad) const;

    [[nodiscard]] std::size_t branch_count() const { return signs_.size(); }

  private:
    struct Workspace;

    PqcTopology topology_;
    std::vector<std::vector<int>> signs_; // [branch][layer] in {+1, -1}
    std::vector<cplx> weight_;            // conj(b_s) b_s', row-major
};

/// Forward through the chosen engine.
[[nodiscard]] double predict(const PqcModel &model, const EncodedSample &sample,
                             GradientEngine engine = GradientEngine::Branch);

/// Exact gradient through the chosen engine.
[[nodiscard]] ValueAndGradient
value_and_gradient(const PqcModel &model, const EncodedSample &sample,
                   GradientEngine engine = GradientEngine::Branch);

[[nodiscard]] std::vector<double>
gradient(const PqcModel &model, const EncodedSample &sample,
         GradientEngine engine = GradientEngine::Branch);

} // namespace qnnts
