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

#include "qnnts/wavelet.hpp"

#include "qnnts/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>

namespace qnnts {
namespace {

std::mutex &planner_mutex() {
    static std::mutex m;
    return m;
}

template <typename T> struct FftwFree {
    void operator()(T *p) const { fftw_free(p); }
};
template <typename T> using FftwPtr = std::unique_ptr<T, FftwFree<T>>;

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) {
        p <<= 1;
    }
    return p;
}

} // namespace

double dog12(double t) {
    static const double norm =
        -64.0 / (315.0 * std::sqrt(3187041.0) * std::pow(std::numbers::pi, 0.25));
    const double t2 = t * t;
    // Horner in t^2.
    double p = 1.0;
    p = p * t2 - 66.0;
    p = p * t2 + 1485.0;
    p = p * t2 - 13860.0;
    p = p * t2 + 51975.0;
    p = p * t2 - 62370.0;
    p = p * t2 + 10395.0;
    return norm * p * std::exp(-0.5 * t2);
}

std::vector<double> cwt_scales(std::size_t noct, std::size_t nvoc,
                               double alpha) {
    QNNTS_REQUIRE(noct >= 1 && nvoc >= 1, "cwt needs noct, nvoc >= 1");
    QNNTS_REQUIRE(alpha > 0.0, "cwt smallest scale must be positive");
    std::vector<double> scales;
    scales.reserve(noct * nvoc);
    for (std::size_t oct = 1; oct <= noct; ++oct) {
        for (std::size_t voc = 1; voc <= nvoc; ++voc) {
            scales.push_back(alpha * std::exp2(static_cast<double>(oct - 1)) *
                             std::exp2(static_cast<double>(voc) /
                                       static_cast<double>(nvoc)));
        }
    }
    return scales;
}

CwtResult cwt(std::span<const double> series, std::size_t noct,
              std::size_t nvoc, double alpha) {
    QNNTS_REQUIRE(!series.empty(), "cwt of an empty series");
    CwtResult r;
    r.scales = cwt_scales(noct, nvoc, alpha);
    const std::size_t n = series.size();
    r.n = n;
    r.coefficients.assign(r.scales.size() * n, 0.0);
    r.edge_margin.resize(r.scales.size());

    // Lags beyond n - 1 never pair two samples, so 2n points avoid wrap-around
    // for every scale.
    const std::size_t len = next_pow2(2 * n);
    const std::size_t bins = len / 2 + 1;
    FftwPtr<double> buf(fftw_alloc_real(len));
    FftwPtr<fftw_complex> xhat(fftw_alloc_complex(bins));
    FftwPtr<fftw_complex> khat(fftw_alloc_complex(bins));
    fftw_plan fwd_x = nullptr;
    fftw_plan fwd_k = nullptr;
    fftw_plan inv = nullptr;
    {
        std::lock_guard lock(planner_mutex());
        const int l = static_cast<int>(len);
        fwd_x = fftw_plan_dft_r2c_1d(l, buf.get(), xhat.get(), FFTW_ESTIMATE);
        fwd_k = fftw_plan_dft_r2c_1d(l, buf.get(), khat.get(), FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_1d(l, khat.get(), buf.get(), FFTW_ESTIMATE);
    }

    std::fill_n(buf.get(), len, 0.0);
    std::copy(series.begin(), series.end(), buf.get());
    fftw_execute(fwd_x);

    for (std::size_t si = 0; si < r.scales.size(); ++si) {
        const double s = r.scales[si];
        const auto reach = std::min<std::size_t>(
            n - 1, static_cast<std::size_t>(std::ceil(kDog12Support * s)));
        r.edge_margin[si] =
            std::min<std::size_t>(n, static_cast<std::size_t>(std::ceil(10.0 * s)));

        std::fill_n(buf.get(), len, 0.0);
        buf.get()[0] = dog12(0.0);
        for (std::size_t d = 1; d <= reach; ++d) {
            const double v = dog12(static_cast<double>(d) / s);
            buf.get()[d] = v;
            buf.get()[len - d] = v;
        }
        fftw_execute(fwd_k);

        // Correlation: W = X * conj(K).
        for (std::size_t k = 0; k < bins; ++k) {
            const std::complex<double> x(xhat.get()[k][0], xhat.get()[k][1]);
            const std::complex<double> h(khat.get()[k][0], khat.get()[k][1]);
            const auto w = x * std::conj(h);
            khat.get()[k][0] = w.real();
            khat.get()[k][1] = w.imag();
        }
        fftw_execute(inv);

        const double scale = 1.0 / (static_cast<double>(len) * std::sqrt(s));
        double *row = r.coefficients.data() + si * n;
        for (std::size_t u = 0; u < n; ++u) {
            row[u] = buf.get()[u] * scale;
        }
    }

    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(fwd_x);
        fftw_destroy_plan(fwd_k);
        fftw_destroy_plan(inv);
    }
    return r;
}

} // namespace qnnts
