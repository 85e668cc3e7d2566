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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cqrac {

/// Single-qubit Pauli letter. The numeric values fix the canonical
/// alphabetical order X < Y < Z used everywhere for indexing.
enum class Letter : uint8_t { X = 0, Y = 1, Z = 2 };

char letter_to_char(Letter l);
Letter letter_from_char(char c);

/// Number of full-weight words on n qubits, i.e. 3^n. Requires n <= 40 so the
/// count fits in 64 bits.
uint64_t word_count(uint32_t n);

/// A full-weight Pauli observable: one letter from {X, Y, Z} on every qubit
/// (no identity factors). Words are ranked by their base-3 canonical index
/// with X=0, Y=1, Z=2 and qubit 1 as the most significant digit, so
/// index 0 is "XX...X", index 3^n - 1 is "ZZ...Z", and alphabetical order of
/// the letter strings coincides with integer order of the indices.
struct PauliWord {
    uint32_t n = 0;
    std::vector<Letter> letters;  // letters[q-1] acts on qubit q

    static PauliWord from_index(uint32_t n, uint64_t index);
    static PauliWord from_string(std::string_view s);

    uint64_t index() const;
    std::string str() const;

    Letter letter(uint32_t qubit) const { return letters.at(qubit - 1); }

    /// Two full-weight words commute exactly when they differ in an even
    /// number of positions (each differing position contributes one local
    /// anticommutation).
    bool commutes_with(const PauliWord &other) const;

    bool operator==(const PauliWord &other) const = default;
};

/// An n-qubit Pauli operator in symplectic form with a tracked phase:
///
///     operator = i^phase_exp * prod_q X_q^{x bit} * Z_q^{z bit}
///
/// where the per-qubit product is ordered X-then-Z (a qubit with both bits
/// set carries X*Z = -iY). Tracking the exponent of i makes multiplication a
/// pure XOR of masks plus a phase update; Hermitian operators are exactly
/// those whose phase exponent matches the Y-count parity.
///
/// Masks are stored LSB-first: bit q-1 corresponds to qubit q. Supports up to
/// 64 qubits.
struct GeneralPauli {
    uint32_t n = 0;
    uint64_t x_mask = 0;
    uint64_t z_mask = 0;
    uint8_t phase_exp = 0;  // exponent of i, modulo 4

    static GeneralPauli identity(uint32_t n);
    /// Hermitian representation of a full-weight word (sign +1).
    static GeneralPauli from_word(const PauliWord &w);

    GeneralPauli multiplied_by(const GeneralPauli &rhs) const;
    void mul_inplace(const GeneralPauli &rhs);

    /// Symplectic inner product: even number of local anticommutations.
    bool commutes_with(const GeneralPauli &other) const;

    /// Number of qubits carrying a Y component.
    uint32_t y_count() const;
    bool is_identity_mask() const { return x_mask == 0 && z_mask == 0; }
    /// True when every qubit carries a non-identity component.
    bool is_full_weight() const;
    bool is_hermitian() const;
    /// Sign of a Hermitian operator relative to its plain letter word:
    /// +1 or -1. Throws if the operator is not Hermitian.
    int sign() const;
    void negate() { phase_exp = static_cast<uint8_t>((phase_exp + 2) & 3); }

    /// The letter word obtained by dropping the sign. Requires full weight.
    PauliWord word() const;
    /// Canonical index of the letter word. Requires full weight and n <= 40.
    uint64_t word_index() const;

    /// Rendering such as "+XYZ", "-ZZX"; non-Hermitian operators render with
    /// an explicit "+i"/"-i" prefix. Identity components render as "I".
    std::string str() const;

    bool operator==(const GeneralPauli &other) const = default;
};

}  // namespace cqrac
