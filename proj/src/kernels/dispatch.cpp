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

#include <atomic>
#include <cstdlib>
#include <string_view>

namespace qnnts::kernels {

#if defined(QNNTS_HAVE_AVX2)
const KernelTable &avx2_table_unchecked();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(QNNTS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable *resolve_auto() {
    if (const char *env = std::getenv("QNNTS_KERNELS")) {
        const std::string_view want{env};
        if (want == "scalar") {
            return &scalar_table();
        }
        if (want == "avx2" && avx2_table() != nullptr) {
            return avx2_table();
        }
    }
    if (const KernelTable *t = avx2_table()) {
        return t;
    }
    return &scalar_table();
}

std::atomic<const KernelTable *> g_active{nullptr};

} // namespace

const KernelTable *avx2_table() {
#if defined(QNNTS_HAVE_AVX2)
    static const bool ok = cpu_has_avx2();
    return ok ? &avx2_table_unchecked() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable &active() {
    const KernelTable *t = g_active.load(std::memory_order_acquire);
    if (t == nullptr) {
        t = resolve_auto();
        const KernelTable *expected = nullptr;
        if (!g_active.compare_exchange_strong(expected, t,
                                              std::memory_order_acq_rel)) {
            t = expected;
        }
    }
    return *t;
}

bool select(Backend backend) {
    const KernelTable *t = nullptr;
    switch (backend) {
    case Backend::Auto:
        t = resolve_auto();
        break;
    case Backend::Scalar:
        t = &scalar_table();
        break;
    case Backend::Avx2:
        t = avx2_table();
        break;
    }
    if (t == nullptr) {
        return false;
    }
    g_active.store(t, std::memory_order_release);
    return true;
}

} // namespace qnnts::kernels
