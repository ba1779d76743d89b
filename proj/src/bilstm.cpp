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

#include "qnnts/bilstm.hpp"

#include "qnnts/error.hpp"
#include "qnnts/kernels.hpp"
#include "qnnts/parallel.hpp"
#include "qnnts/rng.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace qnnts {
namespace {

constexpr std::size_t kChunks = 16;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct CellRef {
    std::size_t in;
    std::size_t h;
    Activation act;
    const double *w;
    const double *u;
    const double *b;
};

CellRef ref(const LstmCell &c) {
    return {c.input_dim, c.hidden_dim, c.activation, c.w.data(), c.u.data(),
            c.b.data()};
}

CellRef ref(const CellShape &s, const double *params) {
    const double *w = params + s.offset;
    const double *u = w + 4 * s.hidden_dim * s.input_dim;
    const double *b = u + 4 * s.hidden_dim * s.hidden_dim;
    return {s.input_dim, s.hidden_dim, s.activation, w, u, b};
}

// Indexed by processing order k; position is steps-1-k when reversed.
struct CellTrace {
    std::vector<double> gates; // steps x 4h: i, f, g, o after squashing
    std::vector<double> c;     // steps x h
    std::vector<double> ac;    // act(c)
    std::vector<double> h;     // steps x h
};

std::size_t position(std::size_t k, std::size_t steps, bool reverse) {
    return reverse ? steps - 1 - k : k;
}

void cell_forward(const CellRef &cell, const double *x, std::size_t steps,
                  bool reverse, CellTrace &tr) {
    const auto &kt = kernels::active();
    const std::size_t h = cell.h;
    tr.gates.assign(steps * 4 * h, 0.0);
    tr.c.assign(steps * h, 0.0);
    tr.ac.assign(steps * h, 0.0);
    tr.h.assign(steps * h, 0.0);
    for (std::size_t k = 0; k < steps; ++k) {
        double *a = tr.gates.data() + k * 4 * h;
        std::copy_n(cell.b, 4 * h, a);
        kt.gemv_acc(cell.w, 4 * h, cell.in,
                    x + position(k, steps, reverse) * cell.in, a);
        if (k > 0) {
            kt.gemv_acc(cell.u, 4 * h, h, tr.h.data() + (k - 1) * h, a);
        }
        const double *c_prev = k > 0 ? tr.c.data() + (k - 1) * h : nullptr;
        for (std::size_t j = 0; j < h; ++j) {
            const double ig = sigmoid(a[j]);
            const double fg = sigmoid(a[h + j]);
            const double gg = std::tanh(a[2 * h + j]);
            const double og = sigmoid(a[3 * h + j]);
            a[j] = ig;
            a[h + j] = fg;
            a[2 * h + j] = gg;
            a[3 * h + j] = og;
            const double c = (c_prev ? fg * c_prev[j] : 0.0) + ig * gg;
            const double act = cell.act == Activation::Tanh ? std::tanh(c) : c;
            tr.c[k * h + j] = c;
            tr.ac[k * h + j] = act;
            tr.h[k * h + j] = og * act;
        }
    }
}

// dh is indexed by position with row stride ldh. dx (by position) and the
// cell's gradient block dparams are accumulated into.
void cell_backward(const CellRef &cell, const double *x, std::size_t steps,
                   bool reverse, const CellTrace &tr, const double *dh,
                   std::size_t ldh, double *dx, double *dparams) {
    const auto &kt = kernels::active();
    const std::size_t h = cell.h;
    double *dw = dparams;
    double *du = dw + 4 * h * cell.in;
    double *db = du + 4 * h * h;
    std::vector<double> dh_next(h, 0.0);
    std::vector<double> dc_next(h, 0.0);
    std::vector<double> da(4 * h);
    for (std::size_t k = steps; k-- > 0;) {
        const std::size_t pos = position(k, steps, reverse);
        const double *g = tr.gates.data() + k * 4 * h;
        const double *c_prev = k > 0 ? tr.c.data() + (k - 1) * h : nullptr;
        for (std::size_t j = 0; j < h; ++j) {
            const double ig = g[j];
            const double fg = g[h + j];
            const double gg = g[2 * h + j];
            const double og = g[3 * h + j];
            const double act = tr.ac[k * h + j];
            const double dhj = dh[pos * ldh + j] + dh_next[j];
            const double dact =
                cell.act == Activation::Tanh ? 1.0 - act * act : 1.0;
            const double dc = dhj * og * dact + dc_next[j];
            da[j] = dc * gg * ig * (1.0 - ig);
            da[h + j] = c_prev ? dc * c_prev[j] * fg * (1.0 - fg) : 0.0;
            da[2 * h + j] = dc * ig * (1.0 - gg * gg);
            da[3 * h + j] = dhj * act * og * (1.0 - og);
            dc_next[j] = dc * fg;
        }
        const double *xk = x + pos * cell.in;
        kt.ger_acc(dw, 4 * h, cell.in, da.data(), xk);
        for (std::size_t r = 0; r < 4 * h; ++r) {
            db[r] += da[r];
        }
        if (dx) {
            kt.gemv_t_acc(cell.w, 4 * h, cell.in, da.data(), dx + pos * cell.in);
        }
        std::fill(dh_next.begin(), dh_next.end(), 0.0);
        if (k > 0) {
            kt.ger_acc(du, 4 * h, h, da.data(), tr.h.data() + (k - 1) * h);
            kt.gemv_t_acc(cell.u, 4 * h, h, da.data(), dh_next.data());
        }
    }
}

struct LayerTrace {
    CellTrace fwd;
    CellTrace bwd;
    std::vector<double> out; // steps x 2h
};

void layer_forward(const CellRef &f, const CellRef &b, const double *x,
                   std::size_t steps, LayerTrace &tr) {
    cell_forward(f, x, steps, false, tr.fwd);
    cell_forward(b, x, steps, true, tr.bwd);
    const std::size_t h = f.h;
    tr.out.assign(steps * 2 * h, 0.0);
    for (std::size_t t = 0; t < steps; ++t) {
        std::copy_n(tr.fwd.h.data() + t * h, h, tr.out.data() + t * 2 * h);
        std::copy_n(tr.bwd.h.data() + (steps - 1 - t) * h, h,
                    tr.out.data() + t * 2 * h + h);
    }
}

void layer_backward(const CellRef &f, const CellRef &b, std::size_t f_offset,
                    std::size_t b_offset, const double *x, std::size_t steps,
                    const LayerTrace &tr, const double *dout, double *dx,
                    double *grad) {
    const std::size_t h = f.h;
    cell_backward(f, x, steps, false, tr.fwd, dout, 2 * h, dx, grad + f_offset);
    cell_backward(b, x, steps, true, tr.bwd, dout + h, 2 * h, dx,
                  grad + b_offset);
}

// d out / d (final output summed): ones at fwd(T-1) and bwd(0).
std::vector<double> final_sum_seed(std::size_t steps, std::size_t h) {
    std::vector<double> d(steps * 2 * h, 0.0);
    for (std::size_t j = 0; j < h; ++j) {
        d[(steps - 1) * 2 * h + j] = 1.0;
        d[h + j] = 1.0;
    }
    return d;
}

double final_sum(const LayerTrace &tr, std::size_t steps, std::size_t h) {
    double s = 0.0;
    for (std::size_t j = 0; j < h; ++j) {
        s += tr.out[(steps - 1) * 2 * h + j] + tr.out[h + j];
    }
    return s;
}

} // namespace

std::string_view to_string(Activation a) {
    return a == Activation::Tanh ? "tanh" : "linear";
}

Activation activation_from_string(std::string_view s) {
    if (s == "tanh") {
        return Activation::Tanh;
    }
    if (s == "linear") {
        return Activation::Linear;
    }
    throw ArgumentError("unknown activation '" + std::string(s) + "'");
}

LstmCell LstmCell::zeros(std::size_t input_dim, std::size_t hidden_dim,
                         Activation activation) {
    QNNTS_REQUIRE(input_dim >= 1 && hidden_dim >= 1,
                  "LSTM dimensions must be >= 1");
    LstmCell c;
    c.input_dim = input_dim;
    c.hidden_dim = hidden_dim;
    c.activation = activation;
    c.w.assign(4 * hidden_dim * input_dim, 0.0);
    c.u.assign(4 * hidden_dim * hidden_dim, 0.0);
    c.b.assign(4 * hidden_dim, 0.0);
    return c;
}

static void check_cell(const LstmCell &c, std::span<const double> seq,
                       std::size_t steps) {
    QNNTS_REQUIRE(steps >= 1, "LSTM needs at least one step");
    QNNTS_REQUIRE(seq.size() == steps * c.input_dim,
                  "sequence size does not match steps x input_dim");
    QNNTS_REQUIRE(c.w.size() == 4 * c.hidden_dim * c.input_dim &&
                      c.u.size() == 4 * c.hidden_dim * c.hidden_dim &&
                      c.b.size() == 4 * c.hidden_dim,
                  "LSTM weight shapes are inconsistent");
}

std::vector<double> lstm_forward(const LstmCell &cell,
                                 std::span<const double> sequence,
                                 std::size_t steps) {
    check_cell(cell, sequence, steps);
    CellTrace tr;
    cell_forward(ref(cell), sequence.data(), steps, false, tr);
    return std::move(tr.h);
}

std::vector<double> bilstm_layer_forward(const LstmCell &fwd,
                                         const LstmCell &bwd,
                                         std::span<const double> sequence,
                                         std::size_t steps) {
    check_cell(fwd, sequence, steps);
    check_cell(bwd, sequence, steps);
    QNNTS_REQUIRE(fwd.hidden_dim == bwd.hidden_dim,
                  "directions must share hidden_dim");
    LayerTrace tr;
    layer_forward(ref(fwd), ref(bwd), sequence.data(), steps, tr);
    return std::move(tr.out);
}

BilstmModel::BilstmModel(BilstmSizes sizes) : sizes_(sizes) {
    QNNTS_REQUIRE(sizes.seq >= 1 && sizes.sin >= 1 && sizes.one >= 1 &&
                      sizes.two >= 1,
                  "BiLSTM units must be >= 1");
    std::size_t offset = 0;
    auto cell = [&](std::size_t in, std::size_t h, Activation act) {
        CellShape s{in, h, act, offset};
        offset += s.parameter_count();
        return s;
    };
    auto layer = [&](std::string_view name, std::size_t in, std::size_t h,
                     Activation act, bool seq) {
        const CellShape f = cell(in, h, act);
        const CellShape b = cell(in, h, act);
        return LayerShape{name, f, b, seq};
    };
    layers_[0] = layer("bd_seq", 1, sizes.seq, Activation::Tanh, true);
    layers_[1] = layer("bd_sin", 2 * sizes.seq, sizes.sin, Activation::Tanh, true);
    layers_[2] = layer("bd_1", 2 * sizes.seq, sizes.one, Activation::Linear, false);
    layers_[3] = layer("bd_2", 2 * sizes.sin, sizes.two, Activation::Tanh, false);
    params.assign(offset, 0.0);
}

BilstmModel BilstmModel::initialized(BilstmSizes sizes, std::uint64_t seed) {
    BilstmModel m(sizes);
    m.seed = seed;
    Rng rng(seed);
    for (const auto &layer : m.layers_) {
        for (const CellShape *c : {&layer.fwd, &layer.bwd}) {
            const double bound =
                1.0 / std::sqrt(static_cast<double>(c->input_dim + c->hidden_dim));
            for (std::size_t i = 0; i < c->parameter_count(); ++i) {
                m.params[c->offset + i] = rng.uniform(-bound, bound);
            }
        }
    }
    return m;
}

LstmCell BilstmModel::cell(std::size_t layer, std::size_t direction) const {
    QNNTS_REQUIRE(layer < 4 && direction < 2, "cell index out of range");
    const CellShape &s = direction == 0 ? layers_[layer].fwd : layers_[layer].bwd;
    LstmCell c = LstmCell::zeros(s.input_dim, s.hidden_dim, s.activation);
    const CellRef r = ref(s, params.data());
    std::copy_n(r.w, c.w.size(), c.w.begin());
    std::copy_n(r.u, c.u.size(), c.u.begin());
    std::copy_n(r.b, c.b.size(), c.b.begin());
    return c;
}

double BilstmModel::predict(std::span<const double> window) const {
    return value_and_gradient(window, {});
}

double BilstmModel::value_and_gradient(std::span<const double> window,
                                       std::span<double> grad) const {
    QNNTS_REQUIRE(!window.empty(), "BiLSTM input window is empty");
    const std::size_t steps = window.size();
    const double *p = params.data();
    std::array<CellRef, 4> f{};
    std::array<CellRef, 4> b{};
    for (std::size_t l = 0; l < 4; ++l) {
        f[l] = ref(layers_[l].fwd, p);
        b[l] = ref(layers_[l].bwd, p);
    }
    std::array<LayerTrace, 4> tr;
    layer_forward(f[0], b[0], window.data(), steps, tr[0]);
    layer_forward(f[1], b[1], tr[0].out.data(), steps, tr[1]);
    layer_forward(f[2], b[2], tr[0].out.data(), steps, tr[2]);
    layer_forward(f[3], b[3], tr[1].out.data(), steps, tr[3]);
    const double value =
        final_sum(tr[2], steps, sizes_.one) + final_sum(tr[3], steps, sizes_.two);
    if (grad.empty()) {
        return value;
    }
    QNNTS_REQUIRE(grad.size() == params.size(), "gradient buffer size mismatch");
    std::fill(grad.begin(), grad.end(), 0.0);
    double *g = grad.data();
    std::vector<double> d0(steps * 2 * sizes_.seq, 0.0);
    std::vector<double> d1(steps * 2 * sizes_.sin, 0.0);
    const auto seed3 = final_sum_seed(steps, sizes_.two);
    layer_backward(f[3], b[3], layers_[3].fwd.offset, layers_[3].bwd.offset,
                   tr[1].out.data(), steps, tr[3], seed3.data(), d1.data(), g);
    const auto seed2 = final_sum_seed(steps, sizes_.one);
    layer_backward(f[2], b[2], layers_[2].fwd.offset, layers_[2].bwd.offset,
                   tr[0].out.data(), steps, tr[2], seed2.data(), d0.data(), g);
    layer_backward(f[1], b[1], layers_[1].fwd.offset, layers_[1].bwd.offset,
                   tr[0].out.data(), steps, tr[1], d1.data(), d0.data(), g);
    layer_backward(f[0], b[0], layers_[0].fwd.offset, layers_[0].bwd.offset,
                   window.data(), steps, tr[0], d0.data(), nullptr, g);
    return value;
}

std::vector<double> predict_all(const BilstmModel &model,
                                std::span<const Window> windows) {
    std::vector<double> out(windows.size());
    for_each_chunk(windows.size(), kChunks, 0,
                   [&](std::size_t, std::size_t b, std::size_t e) {
                       for (std::size_t i = b; i < e; ++i) {
                           out[i] = model.predict(windows[i].input);
                       }
                   });
    return out;
}

BilstmTrainResult train_bilstm(BilstmModel model, std::span<const Window> train,
                               const TrainConfig &config,
                               const EpochCallback &on_epoch) {
    QNNTS_REQUIRE(!train.empty(), "training set is empty");
    const std::size_t n_params = model.parameter_count();
    Optimizer opt(config.optimizer);
    Rng rng(config.seed);
    BilstmTrainResult result{std::move(model), {}};
    result.loss_history.reserve(config.epochs);
    BilstmModel &m = result.model;

    std::vector<double> sq_err(kChunks);
    std::vector<std::vector<double>> partial(kChunks);
    std::vector<double> grad(n_params);

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        double epoch_sq_err = 0.0;
        for (const auto &batch :
             epoch_batches(train.size(), config.batch_size, rng)) {
            std::fill(sq_err.begin(), sq_err.end(), 0.0);
            for (auto &p : partial) {
                p.assign(n_params, 0.0);
            }
            for_each_chunk(
                batch.size(), kChunks, config.threads,
                [&](std::size_t c, std::size_t b, std::size_t e) {
                    std::vector<double> g(n_params);
                    for (std::size_t k = b; k < e; ++k) {
                        const Window &w = train[batch[k]];
                        const double err =
                            m.value_and_gradient(w.input, g) - w.target;
                        sq_err[c] += err * err;
                        for (std::size_t i = 0; i < n_params; ++i) {
                            partial[c][i] += err * g[i];
                        }
                    }
                });
            std::fill(grad.begin(), grad.end(), 0.0);
            for (std::size_t c = 0; c < kChunks; ++c) {
                epoch_sq_err += sq_err[c];
                for (std::size_t i = 0; i < n_params; ++i) {
                    grad[i] += partial[c][i];
                }
            }
            const double scale = 2.0 / static_cast<double>(batch.size());
            for (double &g : grad) {
                g *= scale;
            }
            clip_by_norm(grad, config.clip_norm);
            opt.step(m.params, grad);
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
