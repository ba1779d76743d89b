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

#include "qnnts/kernels.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace qnnts;
namespace k = qnnts::kernels;

namespace {

std::vector<cplx> random_matrix(std::size_t dim, Rng &rng) {
    std::vector<cplx> m(dim * dim);
    for (auto &z : m) {
        z = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    }
    return m;
}

std::vector<double> random_reals(std::size_t n, Rng &rng) {
    std::vector<double> v(n);
    for (auto &x : v) {
        x = rng.uniform(-1.0, 1.0);
    }
    return v;
}

double max_diff(const std::vector<double> &a, const std::vector<double> &b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

} // namespace

TEST_CASE("scalar table is always available and selectable") {
    CHECK(k::scalar_table().name == "scalar");
    REQUIRE(k::select(k::Backend::Scalar));
    CHECK(k::active().name == "scalar");
    REQUIRE(k::select(k::Backend::Auto));
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
    const k::KernelTable *simd = k::avx2_table();
    if (simd == nullptr) {
        SKIP("AVX2 kernels not available on this build or CPU");
    }
    const k::KernelTable &ref = k::scalar_table();
    Rng rng(77);

    SECTION("single-qubit gates on every target") {
        for (std::size_t n = 1; n <= 7; ++n) {
            for (std::size_t t = 0; t < n; ++t) {
                auto a = test::random_amplitudes(n, rng);
                auto b = a;
                const auto m = random_matrix(2, rng);
                ref.apply_1q(a.data(), n, t, m.data());
                simd->apply_1q(b.data(), n, t, m.data());
                CHECK(test::max_abs_diff(a, b) < 1e-14);
                CHECK(std::abs(ref.prob_one(a.data(), n, t) -
                               simd->prob_one(a.data(), n, t)) < 1e-14);
            }
        }
    }

    SECTION("two-qubit dense and diagonal gates on every ordered pair") {
        for (std::size_t n = 2; n <= 6; ++n) {
            for (std::size_t p = 0; p < n; ++p) {
                for (std::size_t q = 0; q < n; ++q) {
                    if (p == q) {
                        continue;
                    }
                    auto a = test::random_amplitudes(n, rng);
                    auto b = a;
                    const auto m = random_matrix(4, rng);
                    ref.apply_2q(a.data(), n, p, q, m.data());
                    simd->apply_2q(b.data(), n, p, q, m.data());
                    CHECK(test::max_abs_diff(a, b) < 1e-13);

                    const auto d = random_matrix(2, rng); // 4 entries
                    ref.apply_2q_diag(a.data(), n, p, q, d.data());
                    simd->apply_2q_diag(b.data(), n, p, q, d.data());
                    CHECK(test::max_abs_diff(a, b) < 1e-13);

                    const auto bra = test::random_amplitudes(n, rng);
                    const cplx x = ref.inner_2q(bra.data(), a.data(), n, p, q, m.data());
                    const cplx y = simd->inner_2q(bra.data(), a.data(), n, p, q, m.data());
                    CHECK(std::abs(x - y) < 1e-13);
                }
            }
        }
    }

    SECTION("elementwise complex and real vector kernels, odd lengths") {
        for (std::size_t len : {1u, 2u, 3u, 4u, 5u, 7u, 16u, 33u, 64u}) {
            std::vector<cplx> x(len), y(len), z(len);
            for (std::size_t i = 0; i < len; ++i) {
                x[i] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
                y[i] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
                z[i] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
            }
            auto a = x;
            auto b = x;
            ref.cmul_inplace(a.data(), y.data(), len);
            simd->cmul_inplace(b.data(), y.data(), len);
            CHECK(test::max_abs_diff(a, b) < 1e-15);
            ref.cmul3(a.data(), x.data(), y.data(), z.data(), len);
            simd->cmul3(b.data(), x.data(), y.data(), z.data(), len);
            CHECK(test::max_abs_diff(a, b) < 1e-15);
            CHECK(std::abs(ref.norm_sq(x.data(), len) - simd->norm_sq(x.data(), len)) <
                  1e-13);

            const auto u = random_reals(len, rng);
            const auto v = random_reals(len, rng);
            CHECK(std::abs(ref.dot(u.data(), v.data(), len) -
                           simd->dot(u.data(), v.data(), len)) < 1e-13);
        }
    }

    SECTION("gemv, transposed gemv and rank-1 update") {
        for (auto [rows, cols] : {std::pair{1u, 1u}, {4u, 1u}, {4u, 3u}, {8u, 9u},
                                  {12u, 17u}, {128u, 33u}, {5u, 64u}}) {
            const auto a = random_reals(rows * cols, rng);
            const auto x = random_reals(cols, rng);
            const auto xr = random_reals(rows, rng);
            auto y1 = random_reals(rows, rng);
            auto y2 = y1;
            ref.gemv_acc(a.data(), rows, cols, x.data(), y1.data());
            simd->gemv_acc(a.data(), rows, cols, x.data(), y2.data());
            CHECK(max_diff(y1, y2) < 1e-12);

            auto z1 = random_reals(cols, rng);
            auto z2 = z1;
            ref.gemv_t_acc(a.data(), rows, cols, xr.data(), z1.data());
            simd->gemv_t_acc(a.data(), rows, cols, xr.data(), z2.data());
            CHECK(max_diff(z1, z2) < 1e-12);

            auto a1 = a;
            auto a2 = a;
            ref.ger_acc(a1.data(), rows, cols, xr.data(), x.data());
            simd->ger_acc(a2.data(), rows, cols, xr.data(), x.data());
            CHECK(max_diff(a1, a2) < 1e-14);
        }
    }
}
