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
 * Train/test partitioning, fixed-length windowing and min-max scaling.
 *
 * The series is split at floor(0.75 N). Each partition is cut into groups of
 * window_len + horizon consecutive points (stride defaults to the group
 * length, i.e. non-overlapping; a trailing remainder is dropped). The scaler
 * is fitted on the raw training partition only and applied to both.
 */
#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace qnnts {

struct ScalerParams {
    double data_min = 0.0;
    double data_max = 1.0;
    double range_lo = 0.2;
    double range_hi = 0.8;

    [[nodiscard]] double transform(double x) const {
        return range_lo +
               (range_hi - range_lo) * (x - data_min) / (data_max - data_min);
    }
    [[nodiscard]] double inverse(double y) const {
        return data_min +
               (y - range_lo) * (data_max - data_min) / (range_hi - range_lo);
    }

    bool operator==(const ScalerParams &) const = default;
};

/// DataError when fewer than two distinct values are present; ArgumentError
/// when the target range is not 0 <= lo < hi <= 1.
[[nodiscard]] ScalerParams fit_scaler(std::span<const double> train_values,
                                      double lo = 0.2, double hi = 0.8);

struct Window {
    std::vector<double> input;
    double target = 0.0;
};

struct WindowConfig {
    std::size_t window_len = 16;
    std::size_t horizon = 1;
    /// 0 means window_len + horizon (non-overlapping groups).
    std::size_t stride = 0;
    double range_lo = 0.2;
    double range_hi = 0.8;
    /// Fraction of the training windows (taken from the tail) held out.
    double validation_fraction = 0.0;

    [[nodiscard]] std::size_t group_len() const { return window_len + horizon; }
    [[nodiscard]] std::size_t effective_stride() const {
        return stride == 0 ? group_len() : stride;
    }
};

struct WindowedDataset {
    std::vector<Window> train;
    std::vector<Window> validation;
    std::vector<Window> test;
    ScalerParams scaler;
    std::size_t window_len = 16;
    std::size_t horizon = 1;
    std::size_t stride = 17;
    std::size_t split_index = 0;
    std::size_t series_length = 0;
};

/// Index of the first test sample: floor(0.75 * n).
[[nodiscard]] std::size_t train_split_index(std::size_t n);

/// Start offsets of the groups cut from a partition of `len` points.
[[nodiscard]] std::vector<std::size_t>
group_starts(std::size_t len, const WindowConfig &config);

/// ArgumentError when the series has fewer than 4 * (window_len + horizon)
/// points.
[[nodiscard]] WindowedDataset
partition_and_window(std::span<const double> series,
                     const WindowConfig &config = {});

/// Reads the `close` column (case-insensitive) of a CSV with a header row.
/// DataError naming the 1-based data row on unparsable or non-positive
/// entries; DataError on a missing column or an empty file.
[[nodiscard]] std::vector<double>
load_prices(const std::filesystem::path &csv_path,
            const std::string &column = "close");

} // namespace qnnts
