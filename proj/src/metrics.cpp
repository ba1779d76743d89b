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

#include "qnnts/metrics.hpp"

#include "qnnts/csv.hpp"
#include "qnnts/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

namespace qnnts {
namespace {

struct MeanStd {
    double mean;
    double std;
};

MeanStd mean_std(std::span<const double> v) {
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) {
        mean += x;
    }
    mean /= n;
    double var = 0.0;
    for (double x : v) {
        var += (x - mean) * (x - mean);
    }
    return {mean, std::sqrt(var / n)};
}

} // namespace

std::string_view to_string(MetricSpace s) {
    return s == MetricSpace::Scaled ? "scaled" : "original";
}

MetricSpace metric_space_from_string(std::string_view s) {
    if (s == "scaled") {
        return MetricSpace::Scaled;
    }
    if (s == "original") {
        return MetricSpace::Original;
    }
    throw ArgumentError("unknown metric space '" + std::string(s) + "'");
}

EvalReport evaluate(std::span<const double> predictions,
                    std::span<const double> targets, MetricSpace space) {
    QNNTS_REQUIRE(!targets.empty(), "evaluate: no samples");
    QNNTS_REQUIRE(predictions.size() == targets.size(),
                  "evaluate: predictions and targets differ in length");
    std::vector<double> sq(targets.size());
    std::vector<double> ratio;
    ratio.reserve(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const double e = predictions[i] - targets[i];
        sq[i] = e * e;
        if (std::abs(targets[i]) > kRatioEpsilon) {
            ratio.push_back(predictions[i] / targets[i]);
        }
    }
    if (ratio.empty()) {
        throw DataError("evaluate: every target is ~0, ratio undefined");
    }
    const auto [mse, sesd] = mean_std(sq);
    const auto [mr, sdr] = mean_std(ratio);
    EvalReport r;
    r.mse = mse;
    r.sesd = sesd;
    r.mr = mr;
    r.sdr = sdr;
    r.n = targets.size();
    r.ratio_excluded = targets.size() - ratio.size();
    r.space = space;
    return r;
}

std::string report_table(std::span<const ReportRow> rows) {
    std::string out = "signal_id,model,mse,sesd,mr,sdr\n";
    for (const auto &row : rows) {
        const auto &r = row.report;
        out += row.signal_id + "," + row.model;
        for (double v : {r.mse, r.sesd, r.mr, r.sdr}) {
            out += "," + csv::format_fixed(v, 5);
        }
        out += "\n";
    }
    if (rows.empty()) {
        return out;
    }

    using Score = std::function<double(const EvalReport &)>;
    const std::array<std::pair<const char *, Score>, 4> metrics{{
        {"mse", [](const EvalReport &r) { return r.mse; }},
        {"sesd", [](const EvalReport &r) { return r.sesd; }},
        {"mr", [](const EvalReport &r) { return std::abs(r.mr - 1.0); }},
        {"sdr", [](const EvalReport &r) { return r.sdr; }},
    }};
    std::vector<std::string> signals;
    for (const auto &row : rows) {
        if (std::find(signals.begin(), signals.end(), row.signal_id) ==
            signals.end()) {
            signals.push_back(row.signal_id);
        }
    }
    out += "\nsignal_id,metric,best_model\n";
    for (const auto &sig : signals) {
        for (const auto &[name, score] : metrics) {
            const ReportRow *best = nullptr;
            for (const auto &row : rows) {
                if (row.signal_id == sig &&
                    (!best || score(row.report) < score(best->report))) {
                    best = &row;
                }
            }
            out += sig + "," + name + "," + best->model + "\n";
        }
    }
    return out;
}

} // namespace qnnts
