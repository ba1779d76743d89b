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
#include "qnnts/optim.hpp"

#include "qnnts/error.hpp"

#include <cmath>
#include <string>

namespace qnnts {

OptimizerKind optimizer_from_string(std::string_view s) {
    if (s == "adam") {
        return OptimizerKind::Adam;
    }
    if (s == "sgd") {
        return OptimizerKind::Sgd;
    }
    throw ArgumentError("unknown optimizer '" + std::string(s) + "'");
}

std::string_view to_string(OptimizerKind kind) {
    return kind == OptimizerKind::Adam ? "adam" : "sgd";
}

void Optimizer::step(std::span<double> params, std::span<const double> grad) {
    QNNTS_REQUIRE(params.size() == grad.size(),
                  "optimizer: parameter/gradient size mismatch");
    ++t_;
    if (config_.kind == OptimizerKind::Sgd) {
        for (std::size_t i = 0; i < params.size(); ++i) {
            params[i] -= config_.lr * grad[i];
        }
        return;
    }
    if (m_.size() != params.size()) {
        m_.assign(params.size(), 0.0);
        v_.assign(params.size(), 0.0);
    }
    const double t = static_cast<double>(t_);
    const double bc1 = 1.0 - std::pow(config_.beta1, t);
    const double bc2 = 1.0 - std::pow(config_.beta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grad[i];
        m_[i] = config_.beta1 * m_[i] + (1.0 - config_.beta1) * g;
        v_[i] = config_.beta2 * v_[i] + (1.0 - config_.beta2) * g * g;
        const double m_hat = m_[i] / bc1;
        const double v_hat = v_[i] / bc2;
        params[i] -= config_.lr * m_hat / (std::sqrt(v_hat) + config_.eps);
    }
}

double clip_by_norm(std::span<double> grad, double max_norm) {
    double sq = 0.0;
    for (double g : grad) {
        sq += g * g;
    }
    const double norm = std::sqrt(sq);
    if (max_norm > 0.0 && norm > max_norm) {
        const double scale = max_norm / norm;
        for (double &g : grad) {
            g *= scale;
        }
    }
    return norm;
}

} // namespace qnnts
