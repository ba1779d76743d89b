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
#include "qnnts/csv.hpp"

#include "qnnts/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qnnts::csv {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        const auto field = line.substr(start, comma == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : comma - start);
        out.emplace_back(trim(field));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) ==
                      std::tolower(static_cast<unsigned char>(y));
           });
}

} // namespace

std::optional<std::size_t> Table::find_column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (iequals(header[i], name)) {
            return i;
        }
    }
    return std::nullopt;
}

Table parse(std::string_view text) {
    Table table;
    bool have_header = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view line =
            trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                              : nl - pos));
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (line.empty()) {
            continue;
        }
        if (!have_header) {
            table.header = split(line);
            have_header = true;
        } else {
            table.rows.push_back(split(line));
        }
    }
    if (!have_header) {
        throw DataError("CSV input is empty");
    }
    return table;
}

Table read(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse(buf.str());
    } catch (const DataError &e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

double parse_double(std::string_view field, std::size_t row) {
    field = trim(field);
    double v = 0.0;
    const auto *end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (field.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw DataError("not a finite number: '" + std::string(field) + "'",
                        row);
    }
    return v;
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_double failed");
    }
    return {buf, ptr};
}

std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::vector<double> read_series(const std::filesystem::path &path) {
    const Table table = read(path);
    const auto col = table.find_column("value");
    if (!col) {
        throw DataError(path.string() + ": missing 'value' column");
    }
    std::vector<double> values;
    values.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto &row = table.rows[r];
        if (*col >= row.size()) {
            throw DataError(path.string() + ": short row", r + 1);
        }
        values.push_back(parse_double(row[*col], r + 1));
    }
    return values;
}

std::string series_text(std::span<const double> values) {
    std::string out = "t,value\n";
    out.reserve(values.size() * 24);
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += format_double(values[i]);
        out += '\n';
    }
    return out;
}

void write_text(const std::filesystem::path &path, std::string_view text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw std::runtime_error("write failed for '" + path.string() + "'");
    }
}

} // namespace qnnts::csv
