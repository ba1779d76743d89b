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
 * Bidirectional LSTM regressor with hand-written backpropagation through
 * time.
 *
 * Topology (units are per direction):
 *
 *     window -> bd_seq (sequences) -> bd_sin (sequences) -> bd_2 (final)
 *                                  \-> bd_1 (final)
 *     prediction = sum(bd_1 final) + sum(bd_2 final)
 *
 * A layer's final output is [h_fwd(T-1), h_bwd(0)]. bd_1 has an identity
 * output activation; every other layer squashes the cell state with tanh.
 *
 * Parameters live in one flat vector. Each cell occupies
 * W (4h x in), U (4h x h), b (4h), row-major, gate rows ordered i, f, g, o.
 * Cells are laid out bd_seq fwd, bd_seq bwd, bd_sin fwd, ..., bd_2 bwd.
 */
#pragma once

#include "qnnts/dataset.hpp"
#include "qnnts/training.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace qnnts {

enum class Activation { Tanh, Linear };

[[nodiscard]] std::string_view to_string(Activation a);
[[nodiscard]] Activation activation_from_string(std::string_view s);

[[nodiscard]] constexpr std::size_t lstm_parameter_count(std::size_t input_dim,
                                                         std::size_t hidden_dim) {
    return 4 * ((input_dim + hidden_dim) * hidden_dim + hidden_dim);
}

struct LstmCell {
    std::size_t input_dim = 1;
    std::size_t hidden_dim = 1;
    Activation activation = Activation::Tanh;
    std::vector<double> w; // 4h x in
    std::vector<double> u; // 4h x h
    std::vector<double> b; // 4h

    static LstmCell zeros(std::size_t input_dim, std::size_t hidden_dim,
                          Activation activation = Activation::Tanh);
    [[nodiscard]] std::size_t parameter_count() const {
        return lstm_parameter_count(input_dim, hidden_dim);
    }
};

/// Hidden states (steps x hidden_dim) for a steps x input_dim sequence,
/// starting from zero hidden and cell state.
[[nodiscard]] std::vector<double> lstm_forward(const LstmCell &cell,
                                               std::span<const double> sequence,
                                               std::size_t steps);

/// steps x 2h; row t is [fwd h(t), bwd h(t)], where the backward cell reads
/// the sequence from the end.
[[nodiscard]] std::vector<double>
bilstm_layer_forward(const LstmCell &fwd, const LstmCell &bwd,
                     std::span<const double> sequence, std::size_t steps);

struct BilstmSizes {
    std::size_t seq = 128;
    std::size_t sin = 32;
    std::size_t one = 1;
    std::size_t two = 1;

    bool operator==(const BilstmSizes &) const = default;
};

struct CellShape {
    std::size_t input_dim;
    std::size_t hidden_dim;
    Activation activation;
    std::size_t offset;

    [[nodiscard]] std::size_t parameter_count() const {
        return lstm_parameter_count(input_dim, hidden_dim);
    }
};

struct LayerShape {
    std::string_view name;
    CellShape fwd;
    CellShape bwd;
    bool return_sequences;
};

/// Count quoted for the reference architecture; not reproducible from the
/// layer sizes, kept for reporting only.
inline constexpr std::size_t kReportedParameterCount = 175648;

class BilstmModel {
  public:
    explicit BilstmModel(BilstmSizes sizes = {});

    /// Every weight and bias uniform in +-1/sqrt(input_dim + hidden_dim) of
    /// its cell.
    static BilstmModel initialized(BilstmSizes sizes, std::uint64_t seed);

    [[nodiscard]] const BilstmSizes &sizes() const { return sizes_; }
    [[nodiscard]] const std::array<LayerShape, 4> &layers() const {
        return layers_;
    }
    [[nodiscard]] std::size_t parameter_count() const { return params.size(); }

    /// Copy of one cell's weights; layer in [0, 4), direction 0 = forward.
    [[nodiscard]] LstmCell cell(std::size_t layer, std::size_t direction) const;

    [[nodiscard]] double predict(std::span<const double> window) const;

    /// Writes d predict / d params into grad (size parameter_count).
    double value_and_gradient(std::span<const double> window,
                              std::span<double> grad) const;

    std::vector<double> params;
    std::uint64_t seed = 0;

  private:
    BilstmSizes sizes_;
    std::array<LayerShape, 4> layers_;
};

struct BilstmTrainResult {
    BilstmModel model;
    std::vector<double> loss_history;
};

/// Same loss, optimizer and batching rules as train_qnn (engine is ignored).
[[nodiscard]] BilstmTrainResult train_bilstm(BilstmModel model,
                                             std::span<const Window> train,
                                             const TrainConfig &config,
                                             const EpochCallback &on_epoch = {});

[[nodiscard]] std::vector<double> predict_all(const BilstmModel &model,
                                              std::span<const Window> windows);

} // namespace qnnts
