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
#include <span>
#include <string_view>
#include <vector>

namespace qnnts {

enum class OptimizerKind { Adam, Sgd };

[[nodiscard]] OptimizerKind optimizer_from_string(std::string_view s);
[[nodiscard]] std::string_view to_string(OptimizerKind kind);

struct OptimizerConfig {
    OptimizerKind kind = OptimizerKind::Adam;
    double lr = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

/// Adam with bias correction, or plain gradient descent. State is sized on
/// the first step.
class Optimizer {
  public:
    explicit Optimizer(OptimizerConfig config) : config_(config) {}

    void step(std::span<double> params, std::span<const double> grad);

    [[nodiscard]] std::size_t steps() const { return t_; }
    [[nodiscard]] const OptimizerConfig &config() const { return config_; }

  private:
    OptimizerConfig config_;
    std::vector<double> m_;
    std::vector<double> v_;
    std::size_t t_ = 0;
};

/// Rescales `grad` in place so its L2 norm is at most max_norm (no-op when
/// max_norm <= 0). Returns the norm before clipping.
double clip_by_norm(std::span<double> grad, double max_norm);

} // namespace qnnts
