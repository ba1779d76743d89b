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
#include <stdexcept>
#include <string>

namespace qnnts {

/// Invalid configuration (qubit counts, topology, layer sizes).
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bad argument to an operation: wrong length, out-of-range index.
class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed or semantically invalid input data. `row()` is the 1-based data
/// row the problem was found on, or 0 when it does not apply.
class DataError : public std::runtime_error {
  public:
    explicit DataError(const std::string &what, std::size_t row = 0)
        : std::runtime_error(row == 0 ? what
                                      : what + " (row " + std::to_string(row) + ")"),
          row_(row) {}
    [[nodiscard]] std::size_t row() const noexcept { return row_; }

  private:
    std::size_t row_;
};

namespace detail {
[[noreturn]] inline void throw_argument(const std::string &msg) {
    throw ArgumentError(msg);
}
} // namespace detail

} // namespace qnnts

#define QNNTS_REQUIRE(cond, msg)                                               \
    do {                                                                       \
        if (!(cond)) {                                                         \
            ::qnnts::detail::throw_argument(msg);                              \
        }                                                                      \
    } while (0)
