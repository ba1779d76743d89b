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
#include "qnnts/metrics.hpp"
#include "qnnts/rng.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>

using namespace qnnts;
using Catch::Approx;

TEST_CASE("perfect prediction") {
    const std::vector<double> y{0.3, 0.5, 0.71};
    const auto r = evaluate(y, y);
    CHECK(r.mse == 0.0);
    CHECK(r.sesd == 0.0);
    CHECK(r.mr == 1.0);
    CHECK(r.sdr == 0.0);
    CHECK(r.n == 3);
}

TEST_CASE("hand-computed statistics") {
    const auto r = evaluate(std::vector<double>{0.5, 0.6}, std::vector<double>{0.4, 0.8});
    CHECK(r.mse == Approx(0.025).margin(1e-15));
    CHECK(r.sesd == Approx(0.015).margin(1e-15));
    CHECK(r.mr == Approx(1.0).margin(1e-15));
    CHECK(r.sdr == Approx(0.25).margin(1e-15));

    const auto s = evaluate(std::vector<double>{0.3}, std::vector<double>{0.6});
    CHECK(s.mse == Approx(0.09).margin(1e-15));
    CHECK(s.sesd == 0.0);
    CHECK(s.mr == Approx(0.5).margin(1e-15));
    CHECK(s.sdr == 0.0);
}

TEST_CASE("near-zero targets are excluded from ratios") {
    const auto r = evaluate(std::vector<double>{1.0, 0.2, 0.3},
                            std::vector<double>{0.0, 0.4, 0.3});
    CHECK(r.ratio_excluded == 1);
    CHECK(r.mr == Approx(0.75));
    CHECK(r.mse == Approx(1.04 / 3.0));
    CHECK_THROWS_AS(evaluate(std::vector<double>{1.0}, std::vector<double>{0.0}),
                    DataError);
    CHECK_THROWS_AS(evaluate(std::vector<double>{1.0}, std::vector<double>{}),
                    ArgumentError);
    CHECK_THROWS_AS(evaluate(std::vector<double>{}, std::vector<double>{}),
                    ArgumentError);
}

TEST_CASE("permutation invariance and scaling behaviour") {
    Rng rng(3);
    std::vector<double> p(50), y(50);
    for (std::size_t i = 0; i < 50; ++i) {
        p[i] = rng.uniform(0.2, 0.8);
        y[i] = rng.uniform(0.2, 0.8);
    }
    const auto base = evaluate(p, y);

    std::vector<std::size_t> idx(50);
    for (std::size_t i = 0; i < 50; ++i) {
        idx[i] = i;
    }
    rng.shuffle(std::span{idx});
    std::vector<double> pp(50), yy(50);
    for (std::size_t i = 0; i < 50; ++i) {
        pp[i] = p[idx[i]];
        yy[i] = y[idx[i]];
    }
    const auto perm = evaluate(pp, yy);
    CHECK(perm.mse == Approx(base.mse).epsilon(1e-12));
    CHECK(perm.sesd == Approx(base.sesd).epsilon(1e-12));
    CHECK(perm.mr == Approx(base.mr).epsilon(1e-12));
    CHECK(perm.sdr == Approx(base.sdr).epsilon(1e-12));

    const double c = 3.5;
    for (auto &v : p) {
        v *= c;
    }
    for (auto &v : y) {
        v *= c;
    }
    const auto scaled = evaluate(p, y);
    CHECK(scaled.mr == Approx(base.mr).epsilon(1e-12));
    CHECK(scaled.sdr == Approx(base.sdr).epsilon(1e-12));
    CHECK(scaled.mse == Approx(c * c * base.mse).epsilon(1e-12));
}

TEST_CASE("sesd vanishes exactly when all squared errors agree") {
    const auto same = evaluate(std::vector<double>{0.4, 0.6, 0.3},
                               std::vector<double>{0.5, 0.5, 0.4});
    CHECK(same.sesd == Approx(0.0).margin(1e-15));
    const auto diff = evaluate(std::vector<double>{0.4, 0.6}, std::vector<double>{0.5, 0.3});
    CHECK(diff.sesd > 0.0);
}

TEST_CASE("report table layout") {
    CHECK(report_table({}) == "signal_id,model,mse,sesd,mr,sdr\n");

    EvalReport reference_row;
    reference_row.mse = 0.00157;
    reference_row.sesd = 0.00230;
    reference_row.mr = 1.00909;
    reference_row.sdr = 0.08807;
    reference_row.n = 147;
    const std::vector<ReportRow> one{{"F0", "QNN", reference_row}};
    const auto text = report_table(one);
    CHECK(text.rfind("signal_id,model,mse,sesd,mr,sdr\n"
                     "F0,QNN,0.00157,0.00230,1.00909,0.08807\n",
                     0) == 0);

    EvalReport other = reference_row;
    other.mse = 0.00002;
    other.sesd = 0.00005;
    other.mr = 0.995;
    other.sdr = 0.1;
    const std::vector<ReportRow> two{{"F0", "QNN", reference_row}, {"F0", "BiLSTM", other}};
    const auto t2 = report_table(two);
    CHECK(t2.find("\nsignal_id,metric,best_model\n"
                  "F0,mse,BiLSTM\nF0,sesd,BiLSTM\nF0,mr,BiLSTM\nF0,sdr,QNN\n") !=
          std::string::npos);
}
