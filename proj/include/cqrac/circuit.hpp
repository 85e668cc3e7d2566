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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cqrac/pauli.hpp"

namespace cqrac {

/// Discrete parameters of the state-preparation circuit family:
///
///   H on qubit 1; CNOT chain 1->2->...->n; S^alpha_0 and Z^alpha_1 on
///   qubit 1; X^alpha_i on qubit i for i = 2..n; then a basis change
///   Gamma(beta_q) on every qubit, with Gamma(0) = I, Gamma(1) = H*Z*S and
///   Gamma(2) = S*H (operator composition right to left, S = diag(1, i)).
///
/// alpha holds the n+1 bits (alpha_0 ... alpha_n) and beta the n trits
/// (beta_1 ... beta_n), for 2^(n+1) * 3^n = 2 * 6^n settings in total.
struct CircuitParams {
    uint32_t n = 0;
    std::vector<int> alpha;  // size n+1, entries in {0, 1}
    std::vector<int> beta;   // size n, entries in {0, 1, 2}

    /// Mixed-radix rank: alpha as big-endian bits (alpha_0 most significant)
    /// above beta as big-endian trits (beta_1 most significant). The all-zero
    /// setting has id 0.
    uint64_t id() const;
    static CircuitParams from_id(uint32_t n, uint64_t id);

    /// Total number of settings, 2 * 6^n.
    static uint64_t count(uint32_t n);

    /// Text form "<alpha digits>,<beta digits>", e.g. "00000,0000" for the
    /// all-zero n = 4 setting. parse() throws std::invalid_argument on
    /// malformed input (wrong lengths, digits out of range).
    std::string str() const;
    static CircuitParams parse(std::string_view text);

    /// Throws std::invalid_argument unless sizes and digit ranges are valid
    /// and n is even and >= 2.
    void validate() const;

    bool operator==(const CircuitParams &other) const = default;
};

enum class GateKind : uint8_t {
    H,
    S,
    Z,
    X,
    CX,
    /// Named basis-change gate in the measurement listing; `label` selects
    /// which of the three Gamma variants.
    Gamma,
    /// Computational-basis readout of one qubit.
    Measure,
};

struct Gate {
    GateKind kind = GateKind::H;
    uint32_t q = 0;      // target qubit (1-based)
    uint32_t q2 = 0;     // CX target when kind == CX
    int label = 0;       // Gamma variant when kind == Gamma

    bool operator==(const Gate &other) const = default;
};

/// A straight-line listing over `n_qubits` wires (1-based). Readout wires
/// beyond the data register (the parity ancilla) are included in n_qubits.
struct Circuit {
    uint32_t n_qubits = 0;
    std::vector<Gate> gates;

    /// One gate per line, lowercase mnemonic then qubit operand(s):
    /// "h 1", "s 1", "z 1", "x 3", "cx 1 2", "gamma2 3", "measure 5".
    std::string to_text() const;
};

/// The preparation listing for `params`. Gates raised to the zeroth power are
/// omitted, and Gamma is emitted decomposed into its {s, z, h} sequence
/// (Gamma(1) -> s, z, h; Gamma(2) -> h, s), so the listing uses only the
/// five plain gate kinds. The all-zero setting reduces to H plus the n-1
/// CNOT chain.
Circuit preparation_circuit(const CircuitParams &params);

/// The parity-readout listing for one observable: a basis-change Gamma on
/// every data qubit (gamma2 for X, gamma1 for Y, gamma0 for Z, so that the
/// ancilla parity reproduces the observable's outcome), a CNOT from every
/// data qubit onto the ancilla n+1, and a final readout of the ancilla.
Circuit measurement_circuit(const PauliWord &obs);

}  // namespace cqrac
