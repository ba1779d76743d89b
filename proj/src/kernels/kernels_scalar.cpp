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

#include "bits.hpp"

namespace qnnts::kernels {
namespace {

using detail::insert_zero;
using detail::insert_zero2;
using detail::ordered;

void apply_1q(cplx *amps, std::size_t n_qubits, std::size_t target,
              const cplx *m) {
    const std::size_t groups = std::size_t{1} << (n_qubits - 1);
    const std::size_t stride = std::size_t{1} << target;
    for (std::size_t g = 0; g < groups; ++g) {
        const std::size_t i0 = insert_zero(g, target);
        const std::size_t i1 = i0 | stride;
        const cplx a0 = amps[i0];
        const cplx a1 = amps[i1];
        amps[i0] = m[0] * a0 + m[1] * a1;
        amps[i1] = m[2] * a0 + m[3] * a1;
    }
}

void apply_2q(cplx *amps, std::size_t n_qubits, std::size_t first,
              std::size_t second, const cplx *m) {
    const auto [lo, hi] = ordered(first, second);
    const std::size_t groups = std::size_t{1} << (n_qubits - 2);
    const std::size_t mf = std::size_t{1} << first;
    const std::size_t ms = std::size_t{1} << second;
    for (std::size_t g = 0; g < groups; ++g) {
        const std::size_t base = insert_zero2(g, lo, hi);
        const std::size_t idx[4] = {base, base | ms, base | mf, base | mf | ms};
        const cplx a[4] = {amps[idx[0]], amps[idx[1]], amps[idx[2]],
                           amps[idx[3]]};
        for (std::size_t r = 0; r < 4; ++r) {
            const cplx *row = m + 4 * r;
            amps[idx[r]] = row[0] * a[0] + row[1] * a[1] + row[2] * a[2] +
                           row[3] * a[3];
        }
    }
}

void apply_2q_diag(cplx *amps, std::size_t n_qubits, std::size_t first,
                   std::size_t second, const cplx *diag) {
    const std::size_t len = std::size_t{1} << n_qubits;
    for (std::size_t i = 0; i < len; ++i) {
        const std::size_t k = (((i >> first) & 1U) << 1) | ((i >> second) & 1U);
        amps[i] *= diag[k];
    }
}

cplx inner_2q(const cplx *bra, const cplx *ket, std::size_t n_qubits,
              std::size_t first, std::size_t second, const cplx *m) {
    const auto [lo, hi] = ordered(first, second);
    const std::size_t groups = std::size_t{1} << (n_qubits - 2);
    const std::size_t mf = std::size_t{1} << first;
    const std::size_t ms = std::size_t{1} << second;
    cplx acc{0.0, 0.0};
    for (std::size_t g = 0; g < groups; ++g) {
        const std::size_t base = insert_zero2(g, lo, hi);
        const std::size_t idx[4] = {base, base | ms, base | mf, base | mf | ms};
        const cplx a[4] = {ket[idx[0]], ket[idx[1]], ket[idx[2]], ket[idx[3]]};
        for (std::size_t r = 0; r < 4; ++r) {
            const cplx *row = m + 4 * r;
            const cplx out =
                row[0] * a[0] + row[1] * a[1] + row[2] * a[2] + row[3] * a[3];
            acc += std::conj(bra[idx[r]]) * out;
        }
    }
    return acc;
}

double prob_one(const cplx *amps, std::size_t n_qubits, std::size_t target) {
    const std::size_t groups = std::size_t{1} << (n_qubits - 1);
    const std::size_t stride = std::size_t{1} << target;
    double p = 0.0;
    for (std::size_t g = 0; g < groups; ++g) {
        p += std::norm(amps[insert_zero(g, target) | stride]);
    }
    return p;
}

double norm_sq(const cplx *amps, std::size_t len) {
    double s = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        s += std::norm(amps[i]);
    }
    return s;
}

void cmul_inplace(cplx *acc, const cplx *x, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
        acc[i] *= x[i];
    }
}

void cmul3(cplx *out, const cplx *a, const cplx *b, const cplx *c,
           std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
        out[i] = a[i] * b[i] * c[i];
    }
}

double dot(const double *x, const double *y, std::size_t len) {
    double s = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        s += x[i] * y[i];
    }
    return s;
}

void gemv_acc(const double *a, std::size_t rows, std::size_t cols,
              const double *x, double *y) {
    for (std::size_t r = 0; r < rows; ++r) {
        y[r] += dot(a + r * cols, x, cols);
    }
}

void gemv_t_acc(const double *a, std::size_t rows, std::size_t cols,
                const double *x, double *y) {
    for (std::size_t r = 0; r < rows; ++r) {
        const double xr = x[r];
        const double *row = a + r * cols;
        for (std::size_t c = 0; c < cols; ++c) {
            y[c] += row[c] * xr;
        }
    }
}

void ger_acc(double *a, std::size_t rows, std::size_t cols, const double *x,
             const double *y) {
    for (std::size_t r = 0; r < rows; ++r) {
        const double xr = x[r];
        double *row = a + r * cols;
        for (std::size_t c = 0; c < cols; ++c) {
            row[c] += xr * y[c];
        }
    }
}

} // namespace

const KernelTable &scalar_table() {
    static const KernelTable table{
        "scalar",   apply_1q,     apply_2q, apply_2q_diag, inner_2q,
        prob_one,   norm_sq,      cmul_inplace, cmul3,     dot,
        gemv_acc,   gemv_t_acc,   ger_acc,
    };
    return table;
}

} // namespace qnnts::kernels
