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
#include "qnnts/rng.hpp"
#include "qnnts/signal.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace qnnts;
using Catch::Approx;

namespace {

double sig(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::vector<double> random_window(Rng &rng, std::size_t n = 16) {
    std::vector<double> x(n);
    for (auto &v : x) {
        v = rng.uniform(0.2, 0.8);
    }
    return x;
}

LstmCell random_cell(std::size_t in, std::size_t h, Rng &rng) {
    auto c = LstmCell::zeros(in, h);
    for (auto *v : {&c.w, &c.u, &c.b}) {
        for (auto &x : *v) {
            x = rng.uniform(-0.7, 0.7);
        }
    }
    return c;
}

} // namespace

TEST_CASE("parameter counts follow 4((in + h) h + h) per direction") {
    CHECK(lstm_parameter_count(1, 1) == 12);
    CHECK(lstm_parameter_count(3, 5) == 4 * ((3 + 5) * 5 + 5));
    const BilstmModel reduced(BilstmSizes{4, 2, 1, 1});
    const std::size_t expect = 2 * (lstm_parameter_count(1, 4) +
                                    lstm_parameter_count(8, 2) +
                                    lstm_parameter_count(8, 1) +
                                    lstm_parameter_count(4, 1));
    CHECK(reduced.parameter_count() == expect);
    CHECK(reduced.parameter_count() == 496);

    const BilstmModel full{BilstmSizes{}};
    const std::size_t full_expect = 2 * (lstm_parameter_count(1, 128) +
                                         lstm_parameter_count(256, 32) +
                                         lstm_parameter_count(256, 1) +
                                         lstm_parameter_count(64, 1));
    CHECK(full.parameter_count() == full_expect);
    // The reported 175,648 does not follow from these sizes; only logged.
    WARN("BiLSTM 128/32/1/1 parameter count " << full.parameter_count()
                                              << " vs reported "
                                              << kReportedParameterCount);
}

TEST_CASE("zero weights give zero hidden states and prediction") {
    const auto cell = LstmCell::zeros(3, 4);
    for (std::size_t steps : {1u, 5u, 10u}) {
        const std::vector<double> seq(steps * 3, 0.7);
        for (double h : lstm_forward(cell, seq, steps)) {
            CHECK(h == 0.0);
        }
    }
    const BilstmModel m(BilstmSizes{4, 2, 1, 1});
    CHECK(m.predict(std::vector<double>(16, 0.5)) == 0.0);
}

TEST_CASE("single step matches a hand-evaluated recurrence") {
    auto c = LstmCell::zeros(1, 1);
    // rows i, f, g, o
    c.w = {0.5, -0.3, 0.8, 0.2};
    c.b = {0.1, 0.0, -0.2, 0.3};
    const double x = 0.6;
    const double i = sig(0.5 * x + 0.1);
    const double g = std::tanh(0.8 * x - 0.2);
    const double o = sig(0.2 * x + 0.3);
    const double cell = i * g;
    const auto h = lstm_forward(c, std::vector<double>{x}, 1);
    CHECK(h[0] == Approx(o * std::tanh(cell)).margin(1e-15));

    c.activation = Activation::Linear;
    CHECK(lstm_forward(c, std::vector<double>{x}, 1)[0] ==
          Approx(o * cell).margin(1e-15));

    // Second step with a recurrent weight on the candidate.
    c.activation = Activation::Tanh;
    c.u = {0.0, 0.0, 0.4, 0.0};
    const double x2 = -0.2;
    const double h1 = o * std::tanh(cell);
    const double i2 = sig(0.5 * x2 + 0.1);
    const double f2 = sig(-0.3 * x2);
    const double g2 = std::tanh(0.8 * x2 + 0.4 * h1 - 0.2);
    const double o2 = sig(0.2 * x2 + 0.3);
    const double c2 = f2 * cell + i2 * g2;
    const auto hs = lstm_forward(c, std::vector<double>{x, x2}, 2);
    CHECK(hs[1] == Approx(o2 * std::tanh(c2)).margin(1e-15));
}

TEST_CASE("dimension checks") {
    const auto cell = LstmCell::zeros(2, 3);
    CHECK_THROWS_AS(lstm_forward(cell, std::vector<double>(5), 3), ArgumentError);
    CHECK_THROWS_AS(lstm_forward(cell, std::vector<double>{}, 0), ArgumentError);
    const BilstmModel m(BilstmSizes{4, 2, 1, 1});
    std::vector<double> g(3);
    CHECK_THROWS_AS(m.value_and_gradient(std::vector<double>(16, 0.5), g),
                    ArgumentError);
}

TEST_CASE("reversing the input swaps the directions of a tied layer") {
    Rng rng(12);
    const auto cell = random_cell(2, 3, rng);
    const std::size_t steps = 7;
    std::vector<double> seq(steps * 2);
    for (auto &v : seq) {
        v = rng.uniform(-1, 1);
    }
    std::vector<double> rev(seq.size());
    for (std::size_t t = 0; t < steps; ++t) {
        rev[2 * t] = seq[2 * (steps - 1 - t)];
        rev[2 * t + 1] = seq[2 * (steps - 1 - t) + 1];
    }
    const auto a = bilstm_layer_forward(cell, cell, seq, steps);
    const auto b = bilstm_layer_forward(cell, cell, rev, steps);
    for (std::size_t t = 0; t < steps; ++t) {
        for (std::size_t j = 0; j < 3; ++j) {
            const std::size_t tr = steps - 1 - t;
            CHECK(a[t * 6 + j] == Approx(b[tr * 6 + 3 + j]).margin(1e-15));
            CHECK(a[t * 6 + 3 + j] == Approx(b[tr * 6 + j]).margin(1e-15));
        }
    }
}

TEST_CASE("backpropagation through time matches central differences") {
    Rng rng(7);
    int draws = 0;
    for (; draws < 50; ++draws) {
        const auto m = BilstmModel::initialized({4, 2, 1, 1}, rng.next_u64());
        const auto x = random_window(rng);
        std::vector<double> g(m.parameter_count());
        m.value_and_gradient(x, g);
        // Check a rotating subset of weights each draw; every weight is
        // covered several times across the draws.
        for (std::size_t k = draws % 4; k < g.size(); k += 4) {
            auto p = m;
            auto q = m;
            p.params[k] += 1e-5;
            q.params[k] -= 1e-5;
            const double fd = (p.predict(x) - q.predict(x)) / 2e-5;
            if (std::abs(fd) < 1e-3) {
                CHECK(std::abs(g[k] - fd) < 1e-7);
            } else {
                CHECK(std::abs(g[k] - fd) / std::abs(fd) < 1e-4);
            }
        }
    }
    CHECK(draws == 50);
}

TEST_CASE("initialisation respects the fan-in bound and the seed") {
    const auto m = BilstmModel::initialized({4, 2, 1, 1}, 3);
    for (const auto &layer : m.layers()) {
        for (const CellShape *c : {&layer.fwd, &layer.bwd}) {
            const double bound = 1.0 / std::sqrt(double(c->input_dim + c->hidden_dim));
            for (std::size_t i = 0; i < c->parameter_count(); ++i) {
                CHECK(std::abs(m.params[c->offset + i]) <= bound);
            }
        }
    }
    CHECK(BilstmModel::initialized({4, 2, 1, 1}, 3).params == m.params);
    CHECK(m.layers()[2].fwd.activation == Activation::Linear);
    CHECK(m.layers()[0].return_sequences);
    CHECK_FALSE(m.layers()[3].return_sequences);
}

TEST_CASE("cell() copies the weights used by the model") {
    Rng rng(4);
    const auto m = BilstmModel::initialized({3, 2, 1, 1}, 8);
    const auto x = random_window(rng, 6);
    const auto out0 = bilstm_layer_forward(m.cell(0, 0), m.cell(0, 1), x, 6);
    const auto out2 = bilstm_layer_forward(m.cell(2, 0), m.cell(2, 1), out0, 6);
    const auto out1 = bilstm_layer_forward(m.cell(1, 0), m.cell(1, 1), out0, 6);
    const auto out3 = bilstm_layer_forward(m.cell(3, 0), m.cell(3, 1), out1, 6);
    // finals: fwd at T-1 (col 0), bwd at 0 (col 1)
    const double expect = out2[5 * 2] + out2[1] + out3[5 * 2] + out3[1];
    CHECK(m.predict(x) == Approx(expect).margin(1e-14));
}

TEST_CASE("training behaviour") {
    Rng rng(9);
    std::vector<Window> one{{random_window(rng), 0.42}};
    TrainConfig cfg;
    cfg.epochs = 300;
    cfg.optimizer.lr = 0.02;
    const auto init = BilstmModel::initialized({4, 2, 1, 1}, 1);

    SECTION("a single sample is overfitted") {
        const auto r = train_bilstm(init, one, cfg);
        CHECK(r.loss_history.size() == 300);
        CHECK(r.loss_history.back() < 1e-6);
        CHECK(r.loss_history.back() < r.loss_history.front());
    }
    SECTION("zero learning rate leaves weights unchanged") {
        cfg.epochs = 5;
        cfg.optimizer.lr = 0.0;
        const auto r = train_bilstm(init, one, cfg);
        for (std::size_t k = 0; k < init.params.size(); ++k) {
            CHECK(std::abs(r.model.params[k] - init.params[k]) <= 1e-12);
        }
    }
    SECTION("empty data is rejected") {
        CHECK_THROWS_AS(train_bilstm(init, {}, cfg), ArgumentError);
    }
    SECTION("thread count does not change the result") {
        std::vector<Window> data;
        for (int i = 0; i < 20; ++i) {
            data.push_back({random_window(rng), rng.uniform(0.2, 0.8)});
        }
        cfg.epochs = 3;
        cfg.batch_size = 7;
        cfg.threads = 1;
        const auto a = train_bilstm(init, data, cfg);
        cfg.threads = 3;
        const auto b = train_bilstm(init, data, cfg);
        CHECK(a.model.params == b.model.params);
    }
}

TEST_CASE("reduced model fits the noiseless flat signal", "[slow]") {
    const auto ds = partition_and_window(synthesize(preset("F0", 1)).values);
    TrainConfig cfg;
    cfg.batch_size = 32;
    const auto r = train_bilstm(BilstmModel::initialized({32, 8, 1, 1}, 1), ds.train, cfg);
    CHECK(r.loss_history.size() == 300);
    CHECK(mse_loss(predict_all(r.model, ds.test), ds.test) <= 0.001);
}
