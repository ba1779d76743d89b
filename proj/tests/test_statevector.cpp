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
#include "qnnts/statevector.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>

using namespace qnnts;
using Catch::Approx;

namespace {

constexpr cplx I{0.0, 1.0};

double max_diff(const GateMatrix &m, const std::vector<cplx> &expect) {
    double d = 0.0;
    for (std::size_t i = 0; i < expect.size(); ++i) {
        d = std::max(d, std::abs(m.entries[i] - expect[i]));
    }
    return d;
}

GateOp op(GateKind k, double t) {
    return k == GateKind::XPow ? GateOp::x_pow(0, t) : GateOp::two_qubit(k, 0, 1, t);
}

} // namespace

TEST_CASE("zero state") {
    for (std::size_t n : {1u, 2u, 3u, 10u}) {
        const auto s = new_zero_state(n);
        REQUIRE(s.size() == (std::size_t{1} << n));
        CHECK(s[0] == cplx(1.0, 0.0));
        for (std::size_t i = 1; i < s.size(); ++i) {
            CHECK(s[i] == cplx(0.0, 0.0));
        }
    }
    CHECK_THROWS_AS(new_zero_state(0), ConfigError);
    CHECK_THROWS_AS(new_zero_state(25), ConfigError);
}

TEST_CASE("gate matrices at special exponents") {
    const std::vector<cplx> id4{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
    for (auto k : {GateKind::XXPow, GateKind::YYPow, GateKind::ZZPow}) {
        CHECK(max_diff(gate_matrix(op(k, 0.0)), id4) == 0.0);
        CHECK(max_diff(gate_matrix(op(k, 2.0)), id4) < 1e-15);
    }
    CHECK(max_diff(gate_matrix(op(GateKind::XXPow, 1.0)),
                   {0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0}) < 1e-15);
    CHECK(max_diff(gate_matrix(op(GateKind::YYPow, 1.0)),
                   {0, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, 0}) < 1e-15);
    CHECK(max_diff(gate_matrix(op(GateKind::ZZPow, 1.0)),
                   {1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1}) < 1e-15);
    CHECK(max_diff(gate_matrix(op(GateKind::ZZPow, 0.5)),
                   {1, 0, 0, 0, 0, I, 0, 0, 0, 0, I, 0, 0, 0, 0, 1}) < 1e-15);
    CHECK(max_diff(gate_matrix(op(GateKind::XPow, 1.0)), {0, 1, 1, 0}) < 1e-15);
    CHECK(max_diff(gate_matrix(op(GateKind::XPow, 0.0)), {1, 0, 0, 1}) == 0.0);
}

TEST_CASE("gate matrices follow the closed form at generic exponents") {
    // Independent evaluation of c, s, w from their definitions.
    for (double t : {-1.3, 0.17, 0.37, 0.9, 1.61}) {
        const cplx f = std::exp(I * std::numbers::pi * t / 2.0);
        const cplx c = f * std::cos(std::numbers::pi * t / 2.0);
        const cplx s = -I * f * std::sin(std::numbers::pi * t / 2.0);
        const cplx w = std::exp(I * std::numbers::pi * t);
        CHECK(max_diff(gate_matrix(op(GateKind::XXPow, t)),
                       {c, 0, 0, s, 0, c, s, 0, 0, s, c, 0, s, 0, 0, c}) < 1e-14);
        CHECK(max_diff(gate_matrix(op(GateKind::YYPow, t)),
                       {c, 0, 0, -s, 0, c, s, 0, 0, s, c, 0, -s, 0, 0, c}) < 1e-14);
        CHECK(max_diff(gate_matrix(op(GateKind::ZZPow, t)),
                       {1, 0, 0, 0, 0, w, 0, 0, 0, 0, w, 0, 0, 0, 0, 1}) < 1e-14);
        CHECK(max_diff(gate_matrix(op(GateKind::XPow, t)), {c, s, s, c}) < 1e-14);
    }
}

TEST_CASE("gate matrices are unitary and 2-periodic") {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const auto k = static_cast<GateKind>(rng.below(4));
        const double t = rng.uniform(-10.0, 10.0);
        const auto m = gate_matrix(op(k, t));
        CHECK(is_unitary(m, 1e-12));
        const auto m2 = gate_matrix(op(k, t + 2.0));
        CHECK(max_diff(m2, {m.entries.begin(), m.entries.begin() + m.dim * m.dim}) <
              1e-12);
    }
}

TEST_CASE("apply_gate basics") {
    auto s = apply_gate(new_zero_state(2), GateOp::x_pow(0, 1.0));
    CHECK(std::abs(s[1] - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(s[0]) == 0.0);

    auto s3 = apply_gate(new_zero_state(3), GateOp::x_pow(1, 1.0));
    CHECK(std::abs(std::abs(s3[2]) - 1.0) < 1e-15);

    const auto h = apply_gate(new_zero_state(1), GateOp::x_pow(0, 0.5));
    CHECK(prob_one(h, 0) == Approx(0.5).margin(1e-15));

    Rng rng(1);
    const auto r = test::random_state(4, rng);
    for (auto k : {GateKind::XXPow, GateKind::YYPow, GateKind::ZZPow}) {
        const auto out = apply_gate(r, GateOp::two_qubit(k, 1, 3, 0.0));
        CHECK(test::max_abs_diff(out.amplitudes(), r.amplitudes()) == 0.0);
    }
}

TEST_CASE("prob_one closed form and errors") {
    CHECK(prob_one(new_zero_state(1), 0) == 0.0);
    CHECK(prob_one(apply_gate(new_zero_state(1), GateOp::x_pow(0, 1.0)), 0) ==
          Approx(1.0).margin(1e-15));
    for (double a : {0.1, 0.33, 0.5, 0.77, 1.4}) {
        const auto s = apply_gate(new_zero_state(1), GateOp::x_pow(0, a));
        const double expect = std::pow(std::sin(std::numbers::pi * a / 2.0), 2);
        CHECK(prob_one(s, 0) == Approx(expect).margin(1e-14));
    }
    CHECK_THROWS_AS(prob_one(new_zero_state(2), 2), ArgumentError);
}

TEST_CASE("invalid gates are rejected") {
    auto s = new_zero_state(3);
    CHECK_THROWS_AS(s.apply(GateOp::x_pow(3, 0.5)), ArgumentError);
    CHECK_THROWS_AS(s.apply(GateOp::two_qubit(GateKind::XXPow, 0, 3, 0.5)),
                    ArgumentError);
    CHECK_THROWS_AS(s.apply(GateOp::two_qubit(GateKind::ZZPow, 1, 1, 0.5)),
                    ArgumentError);
    CHECK_THROWS_AS(dense_oracle_apply(new_zero_state(5), GateOp::x_pow(0, 1.0)),
                    ConfigError);
}

TEST_CASE("dense Kronecker oracle agrees with the kernels") {
    Rng rng(2024);
    for (std::size_t n = 1; n <= 4; ++n) {
        for (int i = 0; i < 150; ++i) {
            const auto s = test::random_state(n, rng);
            GateOp g = n == 1 ? GateOp::x_pow(0, rng.uniform(-3, 3))
                              : test::random_gate(n, rng);
            const auto fast = apply_gate(s, g);
            const auto slow = dense_oracle_apply(s, g);
            CHECK(test::max_abs_diff(fast.amplitudes(), slow.amplitudes()) < 1e-10);
        }
    }
    SECTION("worked example: XX^0.37 on qubits (0, 2) of three") {
        const auto s = test::random_state(3, rng);
        const GateOp g = GateOp::two_qubit(GateKind::XXPow, 0, 2, 0.37);
        CHECK(test::max_abs_diff(apply_gate(s, g).amplitudes(),
                                 dense_oracle_apply(s, g).amplitudes()) < 1e-10);
    }
    SECTION("oracle places qubit 1 on bit 1") {
        const auto out = dense_oracle_apply(new_zero_state(3), GateOp::x_pow(1, 1.0));
        CHECK(std::abs(std::abs(out[2]) - 1.0) < 1e-15);
    }
}

TEST_CASE("norm is preserved over long random circuits") {
    Rng rng(9);
    auto s = test::random_state(10, rng);
    for (int i = 0; i < 500; ++i) {
        s.apply(test::random_gate(10, rng));
    }
    CHECK(std::abs(s.norm_sq() - 1.0) < 1e-12);
}

TEST_CASE("exponents add and adjoint inverts") {
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        const GateOp g = test::random_gate(5, rng);
        const double a = rng.uniform(-2, 2);
        const double b = rng.uniform(-2, 2);
        const auto s = test::random_state(5, rng);
        GateOp ga = g, gb = g, gab = g;
        ga.exponent = a;
        gb.exponent = b;
        gab.exponent = a + b;
        auto two = apply_gate(apply_gate(s, ga), gb);
        auto one = apply_gate(s, gab);
        CHECK(test::max_abs_diff(two.amplitudes(), one.amplitudes()) < 1e-12);

        auto back = apply_gate(s, g);
        back.apply_adjoint(g);
        CHECK(test::max_abs_diff(back.amplitudes(), s.amplitudes()) < 1e-12);
    }
}

TEST_CASE("both kernel backends give the same circuit output") {
    Rng rng(3);
    const auto s0 = test::random_state(9, rng);
    std::vector<GateOp> circuit;
    for (int i = 0; i < 60; ++i) {
        circuit.push_back(test::random_gate(9, rng));
    }
    auto run = [&] {
        auto s = s0;
        for (const auto &g : circuit) {
            s.apply(g);
        }
        return s;
    };
    REQUIRE(kernels::select(kernels::Backend::Scalar));
    const auto a = run();
    const bool have_simd = kernels::select(kernels::Backend::Avx2);
    const auto b = run();
    kernels::select(kernels::Backend::Auto);
    if (have_simd) {
        CHECK(test::max_abs_diff(a.amplitudes(), b.amplitudes()) < 1e-12);
    }
}
