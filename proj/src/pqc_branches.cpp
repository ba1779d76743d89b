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
#include "qnnts/error.hpp"
#include "qnnts/kernels.hpp"
#include "qnnts/numeric.hpp"
#include "qnnts/pqc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace qnnts {
namespace {

using Vec2 = std::array<cplx, 2>;

constexpr std::size_t kMaxLayers = 10;
constexpr cplx kI{0.0, 1.0};

// Eigenvector of the readout Pauli for eigenvalue sigma.
Vec2 eigvec(GateKind kind, int sigma) {
    const double r = std::numbers::sqrt2 / 2.0;
    switch (kind) {
    case GateKind::XXPow:
        return {cplx{r, 0.0}, cplx{sigma * r, 0.0}};
    case GateKind::YYPow:
        return {cplx{r, 0.0}, cplx{0.0, sigma * r}};
    default:
        return sigma > 0 ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
    }
}

// P v for the single-qubit Pauli underlying `kind`
Vec2 pauli(GateKind kind, const Vec2 &v) {
    switch (kind) {
    case GateKind::XXPow:
        return {v[1], v[0]};
    case GateKind::YYPow:
        return {-kI * v[1], kI * v[0]};
    default:
        return {v[0], -v[1]};
    }
}

// row-vector r P
Vec2 pauli_row(GateKind kind, const Vec2 &r) {
    switch (kind) {
    case GateKind::XXPow:
        return {r[1], r[0]};
    case GateKind::YYPow:
        return {kI * r[1], -kI * r[0]};
    default:
        return {r[0], -r[1]};
    }
}

struct Rotation {
    double c;
    double s; // exp(-i sigma theta P) = c I - i sigma s P, theta = pi t / 2
};

Rotation rotation(double exponent) {
    const auto [s, c] = sincos_pi(exponent / 2.0);
    return {c, s};
}

Vec2 rotate(GateKind kind, int sigma, Rotation rot, const Vec2 &v) {
    const Vec2 pv = pauli(kind, v);
    const cplx k = -kI * static_cast<double>(sigma) * rot.s;
    return {rot.c * v[0] + k * pv[0], rot.c * v[1] + k * pv[1]};
}

Vec2 rotate_row(GateKind kind, int sigma, Rotation rot, const Vec2 &r) {
    const Vec2 rp = pauli_row(kind, r);
    const cplx k = -kI * static_cast<double>(sigma) * rot.s;
    return {rot.c * r[0] + k * rp[0], rot.c * r[1] + k * rp[1]};
}

// X^a |0> without its global phase
Vec2 encoded_input(double a) {
    const auto [s, c] = sincos_pi(a / 2.0);
    return {cplx{c, 0.0}, cplx{0.0, -s}};
}

} // namespace

BranchEvaluator::BranchEvaluator(const PqcTopology &topology)
    : topology_(topology) {
    topology_.validate();
    const std::size_t n_layers = topology_.layers.size();
    if (n_layers > kMaxLayers) {
        throw ConfigError("branch engine supports at most " +
                          std::to_string(kMaxLayers) +
                          " layers; use the statevector engine");
    }
    std::vector<cplx> coeff;
    for (std::size_t bits = 0; bits < (std::size_t{1} << n_layers); ++bits) {
        std::vector<int> sigma(n_layers);
        Vec2 prev{1.0, 0.0};
        cplx c{1.0, 0.0};
        for (std::size_t l = 0; l < n_layers; ++l) {
            sigma[l] = ((bits >> l) & 1U) != 0 ? -1 : 1;
            const Vec2 e = eigvec(topology_.layers[l], sigma[l]);
            c *= std::conj(e[0]) * prev[0] + std::conj(e[1]) * prev[1];
            prev = e;
        }
        const cplx b = c * prev[1];
        if (std::abs(b) < 1e-14) {
            continue;
        }
        signs_.push_back(std::move(sigma));
        coeff.push_back(b);
    }
    const std::size_t nb = coeff.size();
    weight_.resize(nb * nb);
    for (std::size_t s = 0; s < nb; ++s) {
        for (std::size_t t = 0; t < nb; ++t) {
            weight_[s * nb + t] = std::conj(coeff[s]) * coeff[t];
        }
    }
}

struct BranchEvaluator::Workspace {
    std::vector<Vec2> states;   // [input][branch][layer + 1]
    std::vector<cplx> gram;     // [input][branch * branch]
    std::vector<cplx> suffix;   // [input][branch * branch]
    std::vector<cplx> prefix;   // [branch * branch]
    std::vector<cplx> leave_one;

    static Workspace &local() {
        thread_local Workspace ws;
        return ws;
    }
};

namespace {

void fill_gram(const Vec2 *phi, std::size_t stride, std::size_t nb,
               cplx *gram) {
    for (std::size_t s = 0; s < nb; ++s) {
        const Vec2 &a = phi[s * stride];
        const cplx a0 = std::conj(a[0]);
        const cplx a1 = std::conj(a[1]);
        for (std::size_t t = 0; t < nb; ++t) {
            const Vec2 &b = phi[t * stride];
            gram[s * nb + t] = a0 * b[0] + a1 * b[1];
        }
    }
}

} // namespace

double BranchEvaluator::forward(std::span<const double> params,
                                const EncodedSample &sample) const {
    const std::size_t n = topology_.n_inputs;
    const std::size_t n_layers = topology_.layers.size();
    QNNTS_REQUIRE(params.size() == topology_.param_count(),
                  "parameter count does not match topology");
    QNNTS_REQUIRE(sample.exponents.size() == n,
                  "encoded sample length does not match n_inputs");
    const std::size_t nb = signs_.size();
    const auto &k = kernels::active();

    Workspace &ws = Workspace::local();
    ws.prefix = weight_;
    ws.gram.resize(nb * nb);
    ws.states.resize(nb);
    for (std::size_t j = 0; j < n; ++j) {
        const Vec2 v0 = encoded_input(sample.exponents[j]);
        for (std::size_t s = 0; s < nb; ++s) {
            Vec2 v = v0;
            for (std::size_t l = 0; l < n_layers; ++l) {
                v = rotate(topology_.layers[l], signs_[s][l],
                           rotation(params[l * n + j]), v);
            }
            ws.states[s] = v;
        }
        fill_gram(ws.states.data(), 1, nb, ws.gram.data());
        k.cmul_inplace(ws.prefix.data(), ws.gram.data(), nb * nb);
    }
    double total = 0.0;
    for (const cplx &z : ws.prefix) {
        total += z.real();
    }
    return total;
}

double BranchEvaluator::value_and_gradient(std::span<const double> params,
                                           const EncodedSample &sample,
                                           std::span<double> grad) const {
    const std::size_t n = topology_.n_inputs;
    const std::size_t n_layers = topology_.layers.size();
    QNNTS_REQUIRE(params.size() == topology_.param_count(),
                  "parameter count does not match topology");
    QNNTS_REQUIRE(grad.size() == topology_.param_count(),
                  "gradient buffer size does not match topology");
    QNNTS_REQUIRE(sample.exponents.size() == n,
                  "encoded sample length does not match n_inputs");
    const std::size_t nb = signs_.size();
    const std::size_t nn = nb * nb;
    const std::size_t depth = n_layers + 1;
    const auto &k = kernels::active();

    Workspace &ws = Workspace::local();
    ws.states.resize(n * nb * depth);
    ws.gram.resize(n * nn);
    ws.suffix.resize(n * nn);
    ws.leave_one.resize(nn);

    // Per-input branch states after every layer, and their Gram matrices.
    for (std::size_t j = 0; j < n; ++j) {
        Vec2 *base = ws.states.data() + j * nb * depth;
        const Vec2 v0 = encoded_input(sample.exponents[j]);
        for (std::size_t s = 0; s < nb; ++s) {
            Vec2 *chain = base + s * depth;
            chain[0] = v0;
            for (std::size_t l = 0; l < n_layers; ++l) {
                chain[l + 1] = rotate(topology_.layers[l], signs_[s][l],
                                      rotation(params[l * n + j]), chain[l]);
            }
        }
        fill_gram(base + n_layers, depth, nb, ws.gram.data() + j * nn);
    }

    // suffix[j] = gram[j+1] o ... o gram[n-1]; suffix[n-1] is all ones.
    cplx *suffix = ws.suffix.data();
    std::fill(suffix + (n - 1) * nn, suffix + n * nn, cplx{1.0, 0.0});
    for (std::size_t j = n - 1; j-- > 0;) {
        std::copy(suffix + (j + 1) * nn, suffix + (j + 2) * nn, suffix + j * nn);
        k.cmul_inplace(suffix + j * nn, ws.gram.data() + (j + 1) * nn, nn);
    }

    ws.prefix = weight_;
    std::vector<Vec2> q(nb);
    for (std::size_t j = 0; j < n; ++j) {
        // leave_one = weights o gram[0..j) o gram(j..n): Hermitian, so
        // d/dtheta sum(leave_one o gram_j) = 2 Re sum_{s,t} L(s,t) <phi_s|dphi_t>.
        std::copy(ws.prefix.begin(), ws.prefix.end(), ws.leave_one.begin());
        k.cmul_inplace(ws.leave_one.data(), suffix + j * nn, nn);

        const Vec2 *base = ws.states.data() + j * nb * depth;
        std::fill(q.begin(), q.end(), Vec2{});
        for (std::size_t s = 0; s < nb; ++s) {
            const Vec2 &phi = base[s * depth + n_layers];
            const cplx c0 = std::conj(phi[0]);
            const cplx c1 = std::conj(phi[1]);
            const cplx *row = ws.leave_one.data() + s * nb;
            for (std::size_t t = 0; t < nb; ++t) {
                q[t][0] += row[t] * c0;
                q[t][1] += row[t] * c1;
            }
        }

        for (std::size_t t = 0; t < nb; ++t) {
            const Vec2 *chain = base + t * depth;
            Vec2 r = q[t];
            for (std::size_t l = n_layers; l-- > 0;) {
                const GateKind kind = topology_.layers[l];
                const int sigma = signs_[t][l];
                // d chain[l+1] / d theta = -i sigma P chain[l+1]
                const Vec2 pv = pauli(kind, chain[l + 1]);
                const cplx d = -kI * static_cast<double>(sigma) *
                               (r[0] * pv[0] + r[1] * pv[1]);
                grad[l * n + j] += std::numbers::pi * d.real();
                if (l > 0) {
                    r = rotate_row(kind, sigma, rotation(params[l * n + j]), r);
                }
            }
        }
        k.cmul_inplace(ws.prefix.data(), ws.gram.data() + j * nn, nn);
    }

    double value = 0.0;
    for (const cplx &z : ws.prefix) {
        value += z.real();
    }
    return value;
}

} // namespace qnnts
