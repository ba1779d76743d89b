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
 * Inner-loop kernels shared by the simulator and the recurrent baseline.
 *
 * Every kernel has a portable scalar reference implementation. When the
 * build and the running CPU both support AVX2+FMA, a vectorised variant is
 * selected at first use. The two tables are required to agree to rounding
 * (see tests/test_kernels.cpp).
 *
 * Amplitude layout: qubit q is bit q of the amplitude index (qubit 0 is the
 * least-significant bit). Two-qubit matrices are 4x4 row-major in the local
 * basis k = 2*bit(first) + bit(second).
 */
#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace qnnts::kernels {

using cplx = std::complex<double>;

struct KernelTable {
    std::string_view name;

    // amps has 2^n_qubits entries; m is 2x2 row-major.
    void (*apply_1q)(cplx *amps, std::size_t n_qubits, std::size_t target,
                     const cplx *m);
    void (*apply_2q)(cplx *amps, std::size_t n_qubits, std::size_t first,
                     std::size_t second, const cplx *m);
    // diag has 4 entries in the local basis.
    void (*apply_2q_diag)(cplx *amps, std::size_t n_qubits, std::size_t first,
                          std::size_t second, const cplx *diag);
    // <bra| M_(first,second) |ket>
    cplx (*inner_2q)(const cplx *bra, const cplx *ket, std::size_t n_qubits,
                     std::size_t first, std::size_t second, const cplx *m);
    double (*prob_one)(const cplx *amps, std::size_t n_qubits,
                       std::size_t target);
    double (*norm_sq)(const cplx *amps, std::size_t len);
    // acc[i] *= x[i]
    void (*cmul_inplace)(cplx *acc, const cplx *x, std::size_t len);
    // out[i] = a[i] * b[i] * c[i]
    void (*cmul3)(cplx *out, const cplx *a, const cplx *b, const cplx *c,
                  std::size_t len);

    double (*dot)(const double *x, const double *y, std::size_t len);
    // y += A x, A is rows x cols row-major
    void (*gemv_acc)(const double *a, std::size_t rows, std::size_t cols,
                     const double *x, double *y);
    // y += A^T x
    void (*gemv_t_acc)(const double *a, std::size_t rows, std::size_t cols,
                       const double *x, double *y);
    // A += x y^T
    void (*ger_acc)(double *a, std::size_t rows, std::size_t cols,
                    const double *x, const double *y);
};

enum class Backend { Auto, Scalar, Avx2 };

const KernelTable &scalar_table();

/// nullptr when the AVX2 variant is not compiled in or the CPU lacks it.
const KernelTable *avx2_table();

/// Active table. First call resolves Backend::Auto, honouring the
/// QNNTS_KERNELS environment variable ("scalar" or "avx2").
const KernelTable &active();

/// Forces a backend; returns false (and leaves the selection unchanged) when
/// the requested one is unavailable.
bool select(Backend backend);

} // namespace qnnts::kernels
