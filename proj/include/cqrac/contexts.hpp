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

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "cqrac/pauli.hpp"

namespace cqrac {

/// Which half of a generator context: words whose designated-letter count is
/// even, or odd. See generator_context().
enum class Half : uint8_t { Even = 0, Odd = 1 };

enum class ContextOrigin : uint8_t {
    /// Built from a single generator word plus a parity half.
    Generator,
    /// n=4 only: a product of two 2-qubit contexts over a qubit pairing.
    Bipartite,
};

/// A context: a maximal set of mutually commuting full-weight words. A joint
/// eigenstate of a context carries one definite parity per member, which is
/// what the encoder exploits.
struct Context {
    ContextOrigin origin = ContextOrigin::Generator;
    /// Generator-origin only: the word that shares no letter position with
    /// any other member.
    std::optional<PauliWord> generator;
    std::optional<Half> half;
    /// Bipartite-origin only: which qubit ends up paired with qubit 1.
    std::optional<uint32_t> partner_of_first;
    /// Sorted canonical word indices, generator included.
    std::vector<uint64_t> members;

    bool same_members(const Context &other) const { return members == other.members; }
};

/// The context generated by `g` and a parity half. At each qubit the two
/// letters different from the generator's letter serve as alternatives, and
/// the parity counts occurrences of the designated alternative, namely the
/// image of X under the cyclic relabeling X->Y->Z->X that takes Z to the
/// generator's letter at that position:
///
///   generator letter Z: alternatives {X, Y}, parity counts X
///   generator letter X: alternatives {Y, Z}, parity counts Y
///   generator letter Y: alternatives {Z, X}, parity counts Z
///
/// Members: the generator plus the 2^(n-1) alternative words of the requested
/// parity; total size 2^(n-1) + 1.
Context generator_context(const PauliWord &g, Half half);

/// All 2 * 3^n generator contexts (one per word and half), without
/// deduplication. For n = 2 distinct member sets collide pairwise.
std::vector<Context> generator_contexts(uint32_t n);

/// Deduplicated generator catalog: for n = 2 this is the 6 distinct contexts;
/// for n >= 4 all 2 * 3^n are already distinct.
std::vector<Context> generator_catalog(uint32_t n);

/// n = 4 only: the 108 contexts formed as products of two 2-qubit contexts
/// over the three ways of pairing four qubits. Each has 9 members and no
/// generator-like member.
std::vector<Context> bipartite_contexts_n4();

/// The complete catalog of maximal commuting sets of full-weight words:
/// 6 for n = 2, 270 for n = 4 (162 generator + 108 bipartite), and the
/// 2 * 3^n generator contexts for n >= 6.
std::vector<Context> all_contexts(uint32_t n);

/// Exhaustive oracle: every maximal clique of the commutation graph over all
/// 3^n full-weight words, via Bron-Kerbosch with pivoting. Practical for
/// n <= 4 (at most 81 vertices). Returns sorted member-index lists.
std::vector<std::vector<uint64_t>> maximal_commuting_cliques(uint32_t n);

/// The canonical 3x3 two-qubit observable grid:
///
///     XX YY ZZ
///     YZ ZX XY
///     ZY XZ YX
///
/// Each row multiplies to -identity and each column to +identity, and the six
/// lines are exactly the six 2-qubit contexts. A sign assignment over the
/// nine words satisfies a row restriction when its row signs multiply to -1
/// and a column restriction when its column signs multiply to +1; at most
/// five of the six restrictions can hold simultaneously.
struct MagicSquare {
    std::array<std::array<uint64_t, 3>, 3> rows;  // word indices

    static const MagicSquare &canonical();
    std::array<uint64_t, 3> row(int r) const { return rows[r]; }
    std::array<uint64_t, 3> col(int c) const {
        return {rows[0][c], rows[1][c], rows[2][c]};
    }
    /// Operator sign of the product of a row (-1) or column (+1), computed
    /// from the Pauli algebra rather than asserted.
    int row_product_sign(int r) const;
    int col_product_sign(int c) const;
};

/// Restriction label of a 9-sign assignment (indexed by canonical 2-qubit
/// word index): how many of the six row/column restrictions hold, and whether
/// a full line bundle (all three rows or all three columns) holds.
struct RestrictionLabel {
    int satisfied = 0;
    bool star = false;
};

RestrictionLabel classify_signs(const std::array<int8_t, 9> &signs);

}  // namespace cqrac
