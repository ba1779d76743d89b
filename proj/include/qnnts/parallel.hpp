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

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace qnnts {

/// Splits [0, n) into `chunks` contiguous ranges and runs fn(chunk, begin,
/// end) for each, on up to `threads` threads (0 = hardware concurrency).
/// The partition does not depend on the thread count, so reductions done in
/// chunk order are bit-reproducible.
inline void for_each_chunk(
    std::size_t n, std::size_t chunks, std::size_t threads,
    const std::function<void(std::size_t, std::size_t, std::size_t)> &fn) {
    chunks = std::max<std::size_t>(1, std::min(chunks, n));
    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, chunks);
    auto range = [&](std::size_t c) {
        return std::pair{n * c / chunks, n * (c + 1) / chunks};
    };
    if (threads <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) {
            const auto [b, e] = range(c);
            fn(c, b, e);
        }
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t c = t; c < chunks; c += threads) {
                    const auto [b, e] = range(c);
                    fn(c, b, e);
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
    for (auto &err : errors) {
        if (err) {
            std::rethrow_exception(err);
        }
    }
}

} // namespace qnnts
