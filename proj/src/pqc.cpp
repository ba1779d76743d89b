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
#include "qnnts/pqc.hpp"

#include "qnnts/error.hpp"
#include "qnnts/rng.hpp"

#include <algorithm>
#include <numbers>
#include <string>

namespace qnnts {

void PqcTopology::validate() const {
    if (n_inputs < 1 || n_inputs + 1 > kMaxQubits) {
        throw ConfigError("n_inputs must be in [1, " +
                          std::to_string(kMaxQubits - 1) + "]");
    }
    if (layers.empty()) {
        throw ConfigError("layer schedule is empty");
    }
    for (GateKind k : layers) {
        if (arity(k) != 2) {
            throw ConfigError("layer gates must be XX, YY or ZZ");
        }
    }
}

PqcModel::PqcModel(PqcTopology topo)
    : topology(std::move(topo)), params(topology.param_count(), 0.0) {
    topology.validate();
}

PqcModel PqcModel::initialized(PqcTopology topo, std::uint64_t seed) {
    PqcModel model(std::move(topo));
    model.seed = seed;
    Rng rng(seed);
    for (double &p : model.params) {
        p = rng.uniform(0.0, 2.0);
    }
    return model;
}

double median(std::span<const double> values) {
    QNNTS_REQUIRE(!values.empty(), "median of an empty range");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    if (n % 2 == 1) {
        return sorted[n / 2];
    }
    return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

EncodedSample encode(std::span<const double> window, std::size_t n_inputs) {
    QNNTS_REQUIRE(window.size() == n_inputs,
                  "window length " + std::to_string(window.size()) +
                      " does not match " + std::to_string(n_inputs) +
                      " inputs");
    const double centre = median(window);
    EncodedSample out;
    out.exponents.reserve(window.size());
    for (double v : window) {
        out.exponents.push_back(std::clamp(v - centre + 0.5, 0.0, 1.0));
    }
    return out;
}

namespace {

void check_sample(const PqcModel &model, const EncodedSample &sample) {
    QNNTS_REQUIRE(model.params.size() == model.topology.param_count(),
                  "parameter count does not match topology");
    QNNTS_REQUIRE(sample.exponents.size() == model.topology.n_inputs,
                  "encoded sample length does not match n_inputs");
}

} // namespace

std::vector<GateOp> build_circuit(const PqcModel &model,
                                  const EncodedSample &sample) {
    check_sample(model, sample);
    const auto &topo = model.topology;
    std::vector<GateOp> ops;
    ops.reserve(topo.n_inputs + topo.param_count());
    for (std::size_t j = 0; j < topo.n_inputs; ++j) {
        ops.push_back(GateOp::x_pow(j, sample.exponents[j]));
    }
    for (std::size_t l = 0; l < topo.layers.size(); ++l) {
        for (std::size_t j = 0; j < topo.n_inputs; ++j) {
            ops.push_back(GateOp::two_qubit(topo.layers[l], j, topo.readout(),
                                            model.param(l, j)));
        }
    }
    return ops;
}

GradientEngine gradient_engine_from_string(std::string_view s) {
    if (s == "statevector") {
        return GradientEngine::Statevector;
    }
    if (s == "branch") {
        return GradientEngine::Branch;
    }
    throw ArgumentError("unknown engine '" + std::string(s) +
                        "' (expected statevector or branch)");
}

std::string_view to_string(GradientEngine engine) {
    return engine == GradientEngine::Statevector ? "statevector" : "branch";
}

double forward(const PqcModel &model, const EncodedSample &sample) {
    Statevector psi(model.topology.n_qubits());
    for (const GateOp &op : build_circuit(model, sample)) {
        psi.apply(op);
    }
    return psi.prob_one(model.topology.readout());
}

ValueAndGradient adjoint_gradient(const PqcModel &model,
                                  const EncodedSample &sample) {
    const auto ops = build_circuit(model, sample);
    const auto &topo = model.topology;
    const std::size_t first_trainable = topo.n_inputs;

    Statevector lambda(topo.n_qubits());
    for (const GateOp &op : ops) {
        lambda.apply(op);
    }
    ValueAndGradient out;
    out.value = lambda.prob_one(topo.readout());
    out.gradient.assign(topo.param_count(), 0.0);

    // mu = Pi_1 psi; d<psi|Pi|psi>/dt_k = pi * Im <mu_k| G_k |lambda_k>
    Statevector mu = lambda;
    mu.project_one(topo.readout());

    for (std::size_t k = ops.size(); k-- > first_trainable;) {
        const GateOp &op = ops[k];
        const cplx elem =
            matrix_element(mu, lambda, generator_matrix(op.kind), op.targets);
        out.gradient[k - first_trainable] = std::numbers::pi * elem.imag();
        if (k > first_trainable) {
            lambda.apply_adjoint(op);
            mu.apply_adjoint(op);
        }
    }
    return out;
}

double predict(const PqcModel &model, const EncodedSample &sample,
               GradientEngine engine) {
    if (engine == GradientEngine::Statevector) {
        return forward(model, sample);
    }
    check_sample(model, sample);
    return BranchEvaluator(model.topology).forward(model.params, sample);
}

ValueAndGradient value_and_gradient(const PqcModel &model,
                                    const EncodedSample &sample,
                                    GradientEngine engine) {
    if (engine == GradientEngine::Statevector) {
        return adjoint_gradient(model, sample);
    }
    check_sample(model, sample);
    ValueAndGradient out;
    out.gradient.assign(model.topology.param_count(), 0.0);
    out.value = BranchEvaluator(model.topology)
                    .value_and_gradient(model.params, sample, out.gradient);
    return out;
}

std::vector<double> gradient(const PqcModel &model, const EncodedSample &sample,
                             GradientEngine engine) {
    return value_and_gradient(model, sample, engine).gradient;
}

} // namespace qnnts
