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
#include "qnnts/rng.hpp"
#include "qnnts/wavelet.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace qnnts;
using Catch::Approx;

namespace {

// Composite Simpson on [a, b] with n (even) panels.
template <typename F> double simpson(F f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    }
    return s * h / 3.0;
}

// Direct evaluation of the transform definition with zero padding.
double direct(const std::vector<double> &x, std::size_t u, double s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += x[i] * dog12((double(i) - double(u)) / s);
    }
    return acc / std::sqrt(s);
}

} // namespace

TEST_CASE("dog12 values") {
    // Reference from a 50-digit evaluation of the closed form.
    CHECK(dog12(0.0) == Approx(-0.8886129139436670).epsilon(1e-14));
    for (double t : {0.1, 0.7, 1.3, 2.9, 5.5, 9.0}) {
        CHECK(dog12(t) == dog12(-t));
    }
    CHECK(std::abs(dog12(20.0)) < 1e-60);
    CHECK(std::abs(dog12(kDog12Support)) < 1e-30);
}

TEST_CASE("dog12 is admissible and unit-energy") {
    const double mean = simpson([](double t) { return dog12(t); }, -20, 20, 40000);
    const double energy =
        simpson([](double t) { return dog12(t) * dog12(t); }, -20, 20, 40000);
    CHECK(std::abs(mean) < 1e-10);
    CHECK(std::abs(energy - 1.0) < 1e-6);
}

TEST_CASE("scale grid") {
    const auto s = cwt_scales(12, 12, 2.0);
    REQUIRE(s.size() == 144);
    CHECK(s.front() == Approx(2.0 * std::exp2(1.0 / 12.0)));
    CHECK(s[11] == Approx(4.0));
    CHECK(s.back() == Approx(2.0 * std::exp2(11.0) * 2.0));
    for (std::size_t i = 1; i < s.size(); ++i) {
        CHECK(s[i] > s[i - 1]);
    }
    CHECK_THROWS_AS(cwt_scales(0, 12, 2.0), ArgumentError);
    CHECK_THROWS_AS(cwt_scales(2, 0, 2.0), ArgumentError);
    CHECK_THROWS_AS(cwt_scales(2, 2, 0.0), ArgumentError);
}

TEST_CASE("transform agrees with direct summation") {
    Rng rng(13);
    std::vector<double> x(300);
    for (auto &v : x) {
        v = rng.uniform(-1, 1);
    }
    const auto r = cwt(x, 4, 3, 2.0);
    REQUIRE(r.scales.size() == 12);
    REQUIRE(r.coefficients.size() == 12 * 300);
    for (std::size_t si = 0; si < r.scales.size(); ++si) {
        for (std::size_t u : {0u, 1u, 57u, 150u, 298u, 299u}) {
            CHECK(r.at(si, u) == Approx(direct(x, u, r.scales[si])).margin(1e-10));
        }
    }
}

TEST_CASE("transform of simple series") {
    const auto zero = cwt(std::vector<double>(256, 0.0), 3, 4, 2.0);
    for (double c : zero.coefficients) {
        CHECK(c == 0.0);
    }

    const auto flat = cwt(std::vector<double>(512, 5.0), 3, 4, 2.0);
    for (std::size_t si = 0; si < flat.scales.size(); ++si) {
        const std::size_t m = flat.edge_margin[si];
        for (std::size_t u = m; u + m < 512; ++u) {
            CHECK(std::abs(flat.at(si, u)) < 1e-9);
        }
    }

    std::vector<double> impulse(200, 0.0);
    impulse[80] = 1.0;
    const auto imp = cwt(impulse, 1, 4, 2.0);
    for (std::size_t si = 0; si < imp.scales.size(); ++si) {
        std::size_t best = 0;
        for (std::size_t u = 1; u < 200; ++u) {
            if (std::abs(imp.at(si, u)) > std::abs(imp.at(si, best))) {
                best = u;
            }
        }
        CHECK(best == 80);
    }
}

TEST_CASE("default grid has 144 rows") {
    std::vector<double> x(1000);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = std::sin(0.3 * double(i));
    }
    const auto r = cwt(x);
    CHECK(r.scales.size() == 144);
    CHECK(r.coefficients.size() == 144 * 1000);
    CHECK(r.n == 1000);
    CHECK_THROWS_AS(cwt(std::vector<double>{}), ArgumentError);
}
