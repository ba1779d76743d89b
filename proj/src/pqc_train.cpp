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
#include "qnnts/error.hpp"
#include "qnnts/parallel.hpp"
#include "qnnts/training.hpp"

#include <numeric>
#include <optional>

namespace qnnts {
namespace {

constexpr std::size_t kChunks = 16;

struct Partial {
    double sq_err = 0.0;
    std::vector<double> grad;
};

} // namespace

std::vector<std::vector<std::size_t>> epoch_batches(std::size_t n,
                                                    std::size_t batch_size,
                                                    Rng &rng) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (batch_size == 0 || batch_size >= n) {
        return {std::move(order)};
    }
    rng.shuffle(std::span{order});
    std::vector<std::vector<std::size_t>> batches;
    for (std::size_t b = 0; b < n; b += batch_size) {
        batches.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(b),
                             order.begin() + static_cast<std::ptrdiff_t>(
                                                 std::min(n, b + batch_size)));
    }
    return batches;
}

double mse_loss(std::span<const double> predictions,
                std::span<const Window> windows) {
    QNNTS_REQUIRE(predictions.size() == windows.size() && !windows.empty(),
                  "mse_loss: size mismatch or empty input");
    double s = 0.0;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        const double e = predictions[i] - windows[i].target;
        s += e * e;
    }
    return s / static_cast<double>(windows.size());
}

std::vector<double> predict_all(const PqcModel &model,
                                std::span<const Window> windows,
                                GradientEngine engine) {
    std::vector<double> out(windows.size());
    std::optional<BranchEvaluator> branch;
    if (engine == GradientEngine::Branch) {
        branch.emplace(model.topology);
    }
    for_each_chunk(windows.size(), kChunks, 0,
                   [&](std::size_t, std::size_t b, std::size_t e) {
                       for (std::size_t i = b; i < e; ++i) {
                           const EncodedSample s = encode(
                               windows[i].input, model.topology.n_inputs);
                           out[i] = branch ? branch->forward(model.params, s)
                                           : forward(model, s);
                       }
                   });
    return out;
}

QnnTrainResult train_qnn(PqcModel model, std::span<const Window> train,
                         const TrainConfig &config,
                         const EpochCallback &on_epoch) {
    QNNTS_REQUIRE(!train.empty(), "training set is empty");
    const std::size_t n_params = model.topology.param_count();
    std::vector<EncodedSample> samples;
    samples.reserve(train.size());
    for (const Window &w : train) {
        samples.push_back(encode(w.input, model.topology.n_inputs));
    }

    std::optional<BranchEvaluator> branch;
    if (config.engine == GradientEngine::Branch) {
        branch.emplace(model.topology);
    }

    Optimizer opt(config.optimizer);
    Rng rng(config.seed);
    QnnTrainResult result{model, {}};
    result.loss_history.reserve(config.epochs);
    PqcModel &m = result.model;

    std::vector<Partial> partials(kChunks);
    std::vector<double> grad(n_params);

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        double epoch_sq_err = 0.0;
        for (const auto &batch : epoch_batches(train.size(), config.batch_size,
                                               rng)) {
            for (auto &p : partials) {
                p.sq_err = 0.0;
                p.grad.assign(n_params, 0.0);
            }
            for_each_chunk(
                batch.size(), kChunks, config.threads,
                [&](std::size_t c, std::size_t b, std::size_t e) {
                    Partial &part = partials[c];
                    std::vector<double> g(n_params);
                    for (std::size_t k = b; k < e; ++k) {
                        const std::size_t i = batch[k];
                        double value = 0.0;
                        if (branch) {
                            value = branch->value_and_gradient(m.params,
                                                               samples[i], g);
                        } else {
                            auto vg = adjoint_gradient(m, samples[i]);
                            value = vg.value;
                            g = std::move(vg.gradient);
                        }
                        const double err = value - train[i].target;
                        part.sq_err += err * err;
                        for (std::size_t p = 0; p < n_params; ++p) {
                            part.grad[p] += err * g[p];
                        }
                    }
                });
            std::fill(grad.begin(), grad.end(), 0.0);
            double sq_err = 0.0;
            for (const auto &p : partials) {
                sq_err += p.sq_err;
                for (std::size_t k = 0; k < n_params; ++k) {
                    grad[k] += p.grad[k];
                }
            }
            const double scale = 2.0 / static_cast<double>(batch.size());
            for (double &g : grad) {
                g *= scale;
            }
            clip_by_norm(grad, config.clip_norm);
            opt.step(m.params, grad);
            epoch_sq_err += sq_err;
        }
        const double loss = epoch_sq_err / static_cast<double>(train.size());
        result.loss_history.push_back(loss);
        if (on_epoch) {
            on_epoch(epoch, loss);
        }
    }
    return result;
}

} // namespace qnnts
