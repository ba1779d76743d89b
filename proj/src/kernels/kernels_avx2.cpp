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
// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after the runtime CPU check in dispatch.cpp.
#include "qnnts/kernels.hpp"

#include "bits.hpp"

#include <immintrin.h>

namespace qnnts::kernels {
namespace {

using detail::insert_zero;
using detail::insert_zero2;
using detail::ordered;

// Two complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx *p) {
    return _mm256_loadu_pd(reinterpret_cast<const double *>(p));
}
inline void store2(cplx *p, __m256d v) {
    _mm256_storeu_pd(reinterpret_cast<double *>(p), v);
}

struct Bcast {
    __m256d re;
    __m256d im;
};
inline Bcast bcast(cplx z) {
    return {_mm256_set1_pd(z.real()), _mm256_set1_pd(z.imag())};
}

// v * z with z the same complex scalar in both lanes
inline __m256d cmul_bs(__m256d v, Bcast z) {
    const __m256d swapped = _mm256_permute_pd(v, 0b0101);
    return _mm256_fmaddsub_pd(v, z.re, _mm256_mul_pd(swapped, z.im));
}

// lane-wise complex product
inline __m256d cmul_vv(__m256d a, __m256d b) {
    const __m256d b_re = _mm256_movedup_pd(b);
    const __m256d b_im = _mm256_permute_pd(b, 0b1111);
    const __m256d a_sw = _mm256_permute_pd(a, 0b0101);
    return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline __m256d pair(cplx lo, cplx hi) {
    return _mm256_set_pd(hi.imag(), hi.real(), lo.imag(), lo.real());
}
inline __m256d dup_lo(__m256d v) { return _mm256_permute2f128_pd(v, v, 0x00); }
inline __m256d dup_hi(__m256d v) { return _mm256_permute2f128_pd(v, v, 0x11); }

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Re/Im of sum conj(b) * o accumulated lane-wise; call finish() at the end.
struct ConjDotAcc {
    __m256d p = _mm256_setzero_pd();
    __m256d q = _mm256_setzero_pd();
    void add(__m256d b, __m256d o) {
        p = _mm256_fmadd_pd(b, o, p);
        q = _mm256_fmadd_pd(b, _mm256_permute_pd(o, 0b0101), q);
    }
    [[nodiscard]] cplx finish() const {
        alignas(32) double qs[4];
        _mm256_store_pd(qs, q);
        return {hsum(p), (qs[0] - qs[1]) + (qs[2] - qs[3])};
    }
};

// matrix with the roles of the two local bits exchanged
void swap_local_bits(const cplx *m, cplx *out) {
    constexpr std::size_t perm[4] = {0, 2, 1, 3};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            out[4 * perm[r] + perm[c]] = m[4 * r + c];
        }
    }
}

void apply_1q(cplx *amps, std::size_t n_qubits, std::size_t target,
              const cplx *m) {
    const std::size_t len = std::size_t{1} << n_qubits;
    if (target == 0) {
        const __m256d col0 = pair(m[0], m[2]);
        const __m256d col1 = pair(m[1], m[3]);
        for (std::size_t i = 0; i < len; i += 2) {
            const __m256d v = load2(amps + i);
            store2(amps + i, _mm256_add_pd(cmul_vv(dup_lo(v), col0),
                                           cmul_vv(dup_hi(v), col1)));
        }
        return;
    }
    const Bcast m0 = bcast(m[0]), m1 = bcast(m[1]), m2 = bcast(m[2]),
                m3 = bcast(m[3]);
    const std::size_t groups = len >> 1;
    const std::size_t stride = std::size_t{1} << target;
    for (std::size_t g = 0; g < groups; g += 2) {
        const std::size_t i0 = insert_zero(g, target);
        const __m256d v0 = load2(amps + i0);
        const __m256d v1 = load2(amps + (i0 | stride));
        store2(amps + i0, _mm256_add_pd(cmul_bs(v0, m0), cmul_bs(v1, m1)));
        store2(amps + (i0 | stride),
               _mm256_add_pd(cmul_bs(v0, m2), cmul_bs(v1, m3)));
    }
}

// Two-qubit gate whose `second` target is qubit 0: the local pairs (k0,k1)
// and (k2,k3) are contiguous in memory.
template <bool Inner>
cplx two_qubit_low(cplx *amps, const cplx *bra, std::size_t n_qubits,
                   std::size_t first, const cplx *m) {
    __m256d col_a[4];
    __m256d col_b[4];
    for (std::size_t c = 0; c < 4; ++c) {
        col_a[c] = pair(m[c], m[4 + c]);
        col_b[c] = pair(m[8 + c], m[12 + c]);
    }
    const std::size_t groups = std::size_t{1} << (n_qubits - 2);
    const std::size_t mf = std::size_t{1} << first;
    ConjDotAcc acc;
    for (std::size_t g = 0; g < groups; ++g) {
        const std::size_t base = insert_zero2(g, 0, first);
        const __m256d va = load2(amps + base);
        const __m256d vb = load2(amps + (base | mf));
        const __m256d a[4] = {dup_lo(va), dup_hi(va), dup_lo(vb), dup_hi(vb)};
        __m256d out_a = cmul_vv(a[0], col_a[0]);
        __m256d out_b = cmul_vv(a[0], col_b[0]);
        for (std::size_t c = 1; c < 4; ++c) {
            out_a = _mm256_add_pd(out_a, cmul_vv(a[c], col_a[c]));
            out_b = _mm256_add_pd(out_b, cmul_vv(a[c], col_b[c]));
        }
        if constexpr (Inner) {
            acc.add(load2(bra + base), out_a);
            acc.add(load2(bra + (base | mf)), out_b);
        } else {
            store2(amps + base, out_a);
            store2(amps + (base | mf), out_b);
        }
    }
    return acc.finish();
}

// Both targets >= 1: consecutive groups are adjacent amplitudes, so each
// register carries the same local index for two groups.
template <bool Inner>
cplx two_qubit_high(cplx *amps, const cplx *bra, std::size_t n_qubits,
                    std::size_t first, std::size_t second, const cplx *m) {
    const auto [lo, hi] = ordered(first, second);
    Bcast mb[16];
    for (std::size_t k = 0; k < 16; ++k) {
        mb[k] = bcast(m[k]);
    }
    const std::size_t groups = std::size_t{1} << (n_qubits - 2);
    const std::size_t mf = std::size_t{1} << first;
    const std::size_t ms = std::size_t{1} << second;
    ConjDotAcc acc;
    for (std::size_t g = 0; g < groups; g += 2) {
        const std::size_t base = insert_zero2(g, lo, hi);
        const std::size_t idx[4] = {base, base | ms, base | mf, base | mf | ms};
        const __m256d a[4] = {load2(amps + idx[0]), load2(amps + idx[1]),
                              load2(amps + idx[2]), load2(amps + idx[3])};
        for (std::size_t r = 0; r < 4; ++r) {
            __m256d out = cmul_bs(a[0], mb[4 * r]);
            out = _mm256_add_pd(out, cmul_bs(a[1], mb[4 * r + 1]));
            out = _mm256_add_pd(out, cmul_bs(a[2], mb[4 * r + 2]));
            out = _mm256_add_pd(out, cmul_bs(a[3], mb[4 * r + 3]));
            if constexpr (Inner) {
                acc.add(load2(bra + idx[r]), out);
            } else {
                store2(amps + idx[r], out);
            }
        }
    }
    return acc.finish();
}

template <bool Inner>
cplx two_qubit(cplx *amps, const cplx *bra, std::size_t n_qubits,
               std::size_t first, std::size_t second, const cplx *m) {
    if (second == 0) {
        return two_qubit_low<Inner>(amps, bra, n_qubits, first, m);
    }
    if (first == 0) {
        cplx swapped[16];
        swap_local_bits(m, swapped);
        return two_qubit_low<Inner>(amps, bra, n_qubits, second, swapped);
    }
    return two_qubit_high<Inner>(amps, bra, n_qubits, first, second, m);
}

void apply_2q(cplx *amps, std::size_t n_qubits, std::size_t first,
              std::size_t second, const cplx *m) {
    two_qubit<false>(amps, nullptr, n_qubits, first, second, m);
}

cplx inner_2q(const cplx *bra, const cplx *ket, std::size_t n_qubits,
              std::size_t first, std::size_t second, const cplx *m) {
    // ket is only read on the Inner path
    return two_qubit<true>(const_cast<cplx *>(ket), bra, n_qubits, first,
                           second, m);
}

void apply_2q_diag(cplx *amps, std::size_t n_qubits, std::size_t first,
                   std::size_t second, const cplx *diag) {
    const std::size_t len = std::size_t{1} << n_qubits;
    if (first != 0 && second != 0) {
        const auto [lo, hi] = ordered(first, second);
        const Bcast d[4] = {bcast(diag[0]), bcast(diag[1]), bcast(diag[2]),
                            bcast(diag[3])};
        const std::size_t mf = std::size_t{1} << first;
        const std::size_t ms = std::size_t{1} << second;
        for (std::size_t g = 0; g < (len >> 2); g += 2) {
            const std::size_t base = insert_zero2(g, lo, hi);
            const std::size_t idx[4] = {base, base | ms, base | mf,
                                        base | mf | ms};
            for (std::size_t k = 0; k < 4; ++k) {
                store2(amps + idx[k], cmul_bs(load2(amps + idx[k]), d[k]));
            }
        }
        return;
    }
    // One target is qubit 0: the lane selects that bit, the other target's
    // bit selects one of two factor registers.
    const std::size_t other = first == 0 ? second : first;
    __m256d fac[2];
    for (std::size_t h = 0; h < 2; ++h) {
        const std::size_t k0 = first == 0 ? h : 2 * h;
        const std::size_t k1 = first == 0 ? 2 + h : 2 * h + 1;
        fac[h] = pair(diag[k0], diag[k1]);
    }
    for (std::size_t i = 0; i < len; i += 2) {
        const std::size_t h = (i >> other) & 1U;
        store2(amps + i, cmul_vv(load2(amps + i), fac[h]));
    }
}

double prob_one(const cplx *amps, std::size_t n_qubits, std::size_t target) {
    const std::size_t len = std::size_t{1} << n_qubits;
    __m256d acc = _mm256_setzero_pd();
    if (target == 0) {
        const __m256d mask = _mm256_set_pd(1.0, 1.0, 0.0, 0.0);
        for (std::size_t i = 0; i < len; i += 2) {
            const __m256d v = _mm256_mul_pd(load2(amps + i), mask);
            acc = _mm256_fmadd_pd(v, v, acc);
        }
        return hsum(acc);
    }
    const std::size_t stride = std::size_t{1} << target;
    for (std::size_t g = 0; g < (len >> 1); g += 2) {
        const __m256d v = load2(amps + (insert_zero(g, target) | stride));
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    return hsum(acc);
}

double norm_sq(const cplx *amps, std::size_t len) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        const __m256d v = load2(amps + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < len; ++i) {
        s += std::norm(amps[i]);
    }
    return s;
}

void cmul_inplace(cplx *acc, const cplx *x, std::size_t len) {
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        store2(acc + i, cmul_vv(load2(acc + i), load2(x + i)));
    }
    for (; i < len; ++i) {
        acc[i] *= x[i];
    }
}

void cmul3(cplx *out, const cplx *a, const cplx *b, const cplx *c,
           std::size_t len) {
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        store2(out + i,
               cmul_vv(cmul_vv(load2(a + i), load2(b + i)), load2(c + i)));
    }
    for (; i < len; ++i) {
        out[i] = a[i] * b[i] * c[i];
    }
}

double dot(const double *x, const double *y, std::size_t len) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= len; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i),
                               acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4),
                               _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= len; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i),
                               acc0);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < len; ++i) {
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

// y[0..cols) += s * row[0..cols)
inline void axpy(double s, const double *row, double *y, std::size_t cols) {
    const __m256d sv = _mm256_set1_pd(s);
    std::size_t c = 0;
    for (; c + 4 <= cols; c += 4) {
        _mm256_storeu_pd(y + c, _mm256_fmadd_pd(sv, _mm256_loadu_pd(row + c),
                                                _mm256_loadu_pd(y + c)));
    }
    for (; c < cols; ++c) {
        y[c] += s * row[c];
    }
}

void gemv_t_acc(const double *a, std::size_t rows, std::size_t cols,
                const double *x, double *y) {
    for (std::size_t r = 0; r < rows; ++r) {
        axpy(x[r], a + r * cols, y, cols);
    }
}

void ger_acc(double *a, std::size_t rows, std::size_t cols, const double *x,
             const double *y) {
    for (std::size_t r = 0; r < rows; ++r) {
        axpy(x[r], y, a + r * cols, cols);
    }
}

} // namespace

const KernelTable &avx2_table_unchecked() {
    static const KernelTable table{
        "avx2",   apply_1q,     apply_2q, apply_2q_diag, inner_2q,
        prob_one, norm_sq,      cmul_inplace, cmul3,     dot,
        gemv_acc, gemv_t_acc,   ger_acc,
    };
    return table;
}

} // namespace qnnts::kernels
