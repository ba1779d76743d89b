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
#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qnnts::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Case-insensitive column lookup.
    [[nodiscard]] std::optional<std::size_t>
    find_column(std::string_view name) const;
};

/// Comma-separated, first line is the header, blank lines skipped, no
/// quoting. DataError when the file cannot be read or has no header.
[[nodiscard]] Table read(const std::filesystem::path &path);
[[nodiscard]] Table parse(std::string_view text);

/// DataError naming `row` when `field` is not a finite number.
[[nodiscard]] double parse_double(std::string_view field, std::size_t row);

/// Shortest text that round-trips the double exactly.
[[nodiscard]] std::string format_double(double v);

/// Fixed-point with `decimals` digits.
[[nodiscard]] std::string format_fixed(double v, int decimals);

/// Reads the `value` column of a `t,value` series file.
[[nodiscard]] std::vector<double>
read_series(const std::filesystem::path &path);

[[nodiscard]] std::string series_text(std::span<const double> values);

/// Writes `text` to `path`, throwing std::runtime_error on failure.
void write_text(const std::filesystem::path &path, std::string_view text);

} // namespace qnnts::csv
