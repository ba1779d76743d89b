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
#include "qnnts/dataset.hpp"

#include "qnnts/csv.hpp"
#include "qnnts/error.hpp"

#include <algorithm>
#include <cmath>

namespace qnnts {

ScalerParams fit_scaler(std::span<const double> train_values, double lo,
                        double hi) {
    QNNTS_REQUIRE(lo >= 0.0 && lo < hi && hi <= 1.0,
                  "scaler range must satisfy 0 <= lo < hi <= 1");
    if (train_values.empty()) {
        throw DataError("cannot fit a scaler on no data");
    }
    const auto [mn, mx] =
        std::minmax_element(train_values.begin(), train_values.end());
    if (!(*mx > *mn)) {
        throw DataError("degenerate scale: training values are constant");
    }
    return {*mn, *mx, lo, hi};
}

std::size_t train_split_index(std::size_t n) { return (3 * n) / 4; }

std::vector<std::size_t> group_starts(std::size_t len,
                                      const WindowConfig &config) {
    std::vector<std::size_t> starts;
    const std::size_t group = config.group_len();
    const std::size_t stride = config.effective_stride();
    for (std::size_t s = 0; s + group <= len; s += stride) {
        starts.push_back(s);
    }
    return starts;
}

namespace {

void cut_windows(std::span<const double> scaled, const WindowConfig &config,
                 std::vector<Window> &out) {
    for (std::size_t s : group_starts(scaled.size(), config)) {
        Window w;
        w.input.assign(scaled.begin() + static_cast<std::ptrdiff_t>(s),
                       scaled.begin() +
                           static_cast<std::ptrdiff_t>(s + config.window_len));
        w.target = scaled[s + config.window_len + config.horizon - 1];
        out.push_back(std::move(w));
    }
}

} // namespace

WindowedDataset partition_and_window(std::span<const double> series,
                                     const WindowConfig &config) {
    QNNTS_REQUIRE(config.window_len >= 1 && config.horizon >= 1,
                  "window_len and horizon must be positive");
    QNNTS_REQUIRE(config.validation_fraction >= 0.0 &&
                      config.validation_fraction < 1.0,
                  "validation fraction must be in [0, 1)");
    const std::size_t n = series.size();
    QNNTS_REQUIRE(n >= 4 * config.group_len(),
                  "series of " + std::to_string(n) +
                      " points is too short; need at least " +
                      std::to_string(4 * config.group_len()));

    WindowedDataset ds;
    ds.window_len = config.window_len;
    ds.horizon = config.horizon;
    ds.stride = config.effective_stride();
    ds.split_index = train_split_index(n);
    ds.series_length = n;

    const auto train_raw = series.first(ds.split_index);
    const auto test_raw = series.subspan(ds.split_index);
    ds.scaler = fit_scaler(train_raw, config.range_lo, config.range_hi);

    std::vector<double> scaled(n);
    std::transform(series.begin(), series.end(), scaled.begin(),
                   [&](double x) { return ds.scaler.transform(x); });
    const std::span<const double> all{scaled};
    cut_windows(all.first(train_raw.size()), config, ds.train);
    cut_windows(all.subspan(ds.split_index, test_raw.size()), config, ds.test);

    const auto n_val = static_cast<std::size_t>(
        std::floor(config.validation_fraction *
                   static_cast<double>(ds.train.size())));
    if (n_val > 0) {
        ds.validation.assign(
            std::make_move_iterator(ds.train.end() -
                                    static_cast<std::ptrdiff_t>(n_val)),
            std::make_move_iterator(ds.train.end()));
        ds.train.resize(ds.train.size() - n_val);
    }
    return ds;
}

std::vector<double> load_prices(const std::filesystem::path &csv_path,
                                const std::string &column) {
    const csv::Table table = csv::read(csv_path);
    const auto col = table.find_column(column);
    if (!col) {
        throw DataError(csv_path.string() + ": missing '" + column +
                        "' column");
    }
    if (table.rows.empty()) {
        throw DataError(csv_path.string() + ": no data rows");
    }
    std::vector<double> prices;
    prices.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto &row = table.rows[r];
        if (*col >= row.size()) {
            throw DataError(csv_path.string() + ": missing close value", r + 1);
        }
        const double v = csv::parse_double(row[*col], r + 1);
        if (!(v > 0.0)) {
            throw DataError(csv_path.string() + ": non-positive price", r + 1);
        }
        prices.push_back(v);
    }
    return prices;
}

} // namespace qnnts
