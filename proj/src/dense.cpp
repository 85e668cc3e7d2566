// Copyright 2026 The cqrac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cqrac/dense.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace cqrac::dense {

namespace {

using cd = std::complex<double>;
using Mat2 = std::array<cd, 4>;  // row-major [u00 u01 u10 u11]

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Mat2 gate_matrix(GateKind kind, int label) {
    const cd i(0.0, 1.0);
    switch (kind) {
        case GateKind::H: return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
        case GateKind::S: return {1.0, 0.0, 0.0, i};
        case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
        case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
        case GateKind::Gamma:
            switch (label) {
                case 0: return {1.0, 0.0, 0.0, 1.0};
                // H * Z * S and S * H as explicit 2x2 products.
                case 1: return {kInvSqrt2, -i * kInvSqrt2, kInvSqrt2, i * kInvSqrt2};
                case 2: return {kInvSqrt2, kInvSqrt2, i * kInvSqrt2, -i * kInvSqrt2};
                default: throw std::invalid_argument("gamma label must be 0, 1 or 2");
            }
        default:
            throw std::invalid_argument("not a single-qubit gate");
    }
}

void apply_single(cvec &state, uint32_t q, const Mat2 &u) {
    const size_t stride = size_t{1} << (q - 1);
    for (size_t base = 0; base < state.size(); base += 2 * stride) {
        for (size_t off = 0; off < stride; ++off) {
            const size_t b0 = base + off;
            const size_t b1 = b0 + stride;
            const cd a0 = state[b0], a1 = state[b1];
            state[b0] = u[0] * a0 + u[1] * a1;
            state[b1] = u[2] * a0 + u[3] * a1;
        }
    }
}

void apply_cx(cvec &state, uint32_t c, uint32_t t) {
    const size_t cb = size_t{1} << (c - 1);
    const size_t tb = size_t{1} << (t - 1);
    for (size_t b = 0; b < state.size(); ++b)
        if ((b & cb) && !(b & tb)) std::swap(state[b], state[b | tb]);
}

}  // namespace

cvec zero_state(uint32_t n) {
    if (n == 0 || n > 12) throw std::invalid_argument("statevector supports 1..12 wires");
    cvec state(size_t{1} << n, cd(0.0, 0.0));
    state[0] = 1.0;
    return state;
}

void apply_gate(cvec &state, uint32_t n, const Gate &g) {
    if (g.q < 1 || g.q > n || (g.kind == GateKind::CX && (g.q2 < 1 || g.q2 > n)))
        throw std::invalid_argument("gate qubit out of range");
    switch (g.kind) {
        case GateKind::CX:
            apply_cx(state, g.q, g.q2);
            break;
        case GateKind::Measure:
            throw std::logic_error("the statevector oracle has no readout");
        default:
            apply_single(state, g.q, gate_matrix(g.kind, g.label));
    }
}

cvec run(const Circuit &c) {
    cvec state = zero_state(c.n_qubits);
    for (const Gate &g : c.gates) apply_gate(state, c.n_qubits, g);
    return state;
}

cvec build_state_vector(const CircuitParams &params) {
    params.validate();
    if (params.n > 6) throw std::invalid_argument("statevector oracle supports n <= 6");
    return run(preparation_circuit(params));
}

std::complex<double> expectation(const cvec &state, const GeneralPauli &p) {
    if (state.size() != (size_t{1} << p.n))
        throw std::invalid_argument("operator size mismatch");
    // P|b> = i^e (-1)^{popcount(z & b)} |b xor x>.
    const cd i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    cd acc(0.0, 0.0);
    for (size_t b = 0; b < state.size(); ++b) {
        const cd coeff =
            i_pow[p.phase_exp] *
            ((std::popcount(p.z_mask & static_cast<uint64_t>(b)) & 1) ? -1.0 : 1.0);
        acc += std::conj(state[b ^ static_cast<size_t>(p.x_mask)]) * coeff * state[b];
    }
    return acc;
}

int verdict(const cvec &state, const GeneralPauli &p, double tol) {
    const cd e = expectation(state, p);
    if (std::abs(e.imag()) > tol) throw std::logic_error("non-real Pauli expectation");
    const double re = e.real();
    if (std::abs(re - 1.0) <= tol) return +1;
    if (std::abs(re + 1.0) <= tol) return -1;
    if (std::abs(re) <= tol) return 0;
    throw std::logic_error("Pauli expectation of a stabilizer state must be 0 or +-1");
}

}  // namespace cqrac::dense
