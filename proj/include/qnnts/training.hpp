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
 * Mean-squared-error training loops for the circuit regressor.
 */
#pragma once

#include "qnnts/dataset.hpp"
#include "qnnts/optim.hpp"
#include "qnnts/pqc.hpp"
#include "qnnts/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace qnnts {

struct TrainConfig {
    std::size_t epochs = 300;
    OptimizerConfig optimizer{};
    /// 0 = full batch.
    std::size_t batch_size = 0;
    /// Seeds the mini-batch shuffle.
    std::uint64_t seed = 1;
    /// Max L2 norm of the batch gradient, 0 disables clipping.
    double clip_norm = 0.0;
    /// 0 = hardware concurrency. Results do not depend on it.
    std::size_t threads = 0;
    GradientEngine engine = GradientEngine::Branch;
};

using EpochCallback = std::function<void(std::size_t epoch, double loss)>;

struct QnnTrainResult {
    PqcModel model;
    /// Mean training loss over each epoch's batches, before their updates.
    std::vector<double> loss_history;
};

/// ArgumentError on an empty training set or a window length that differs
/// from the model's input count.
[[nodiscard]] QnnTrainResult train_qnn(PqcModel model,
                                       std::span<const Window> train,
                                       const TrainConfig &config,
                                       const EpochCallback &on_epoch = {});

[[nodiscard]] std::vector<double>
predict_all(const PqcModel &model, std::span<const Window> windows,
            GradientEngine engine = GradientEngine::Branch);

/// Mean of (prediction - target)^2.
[[nodiscard]] double mse_loss(std::span<const double> predictions,
                              std::span<const Window> windows);

/// Batch index lists for one epoch: a single full batch, or a seeded
/// shuffle cut into batch_size pieces.
[[nodiscard]] std::vector<std::vector<std::size_t>>
epoch_batches(std::size_t n, std::size_t batch_size, Rng &rng);

} // namespace qnnts
