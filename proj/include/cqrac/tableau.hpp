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
#include <vector>

#include "cqrac/circuit.hpp"
#include "cqrac/pauli.hpp"
#include "cqrac/rng.hpp"

namespace cqrac {

/// Stabilizer tableau of an n-qubit pure state: n stabilizer generators and
/// the paired destabilizer rows. Row j of destab anticommutes with row j of
/// stab and commutes with every other row, which makes group-membership and
/// measurement updates O(n) row operations.
struct Tableau {
    uint32_t n = 0;
    std::vector<GeneralPauli> stab;
    std::vector<GeneralPauli> destab;

    /// |0...0>: stab row q-1 is Z_q, destab row q-1 is X_q.
    static Tableau zero_state(uint32_t n);

    void apply_h(uint32_t q);
    void apply_s(uint32_t q);
    void apply_z(uint32_t q);
    void apply_x(uint32_t q);
    void apply_cx(uint32_t c, uint32_t t);
    /// Gamma(0) = I, Gamma(1) = H*Z*S, Gamma(2) = S*H (right-to-left).
    void apply_gamma(uint32_t q, int label);
    /// Applies every gate of a preparation-style listing; Measure ops are
    /// rejected (use measure()).
    void apply(const Circuit &c);

    /// <P> for a Hermitian Pauli operator: +1 or -1 when +-P lies in the
    /// stabilizer group, 0 (unbiased) otherwise. The state is unchanged.
    int expectation(const GeneralPauli &p) const;

    /// Projective measurement of a Hermitian Pauli operator, collapsing the
    /// state in the unbiased case. Consumes randomness only in that case.
    int measure(const GeneralPauli &p, Rng &rng);

    /// A string key that is equal for two tableaus exactly when they describe
    /// the same state: signed generators after a phase-tracking reduction to
    /// a canonical generating set.
    std::string canonical_key() const;
};

/// A prepared context eigenstate: the tableau plus the discrete parameters
/// that produced it.
struct StabilizerState {
    CircuitParams params;
    Tableau tab;
};

/// Runs the preparation circuit for `params` on |0...0>.
StabilizerState build_state(const CircuitParams &params);

/// All full-weight words with nonzero expectation, in canonical index order.
/// For every preparation setting this is one context: 2^(n-1) + 1 words.
/// Enumerates all 3^n words, so intended for n <= 10.
std::vector<PauliWord> deterministic_set(const Tableau &tab);

/// One measurement outcome without collapse bookkeeping: the deterministic
/// sign when <obs> != 0, otherwise a fair coin. Consumes randomness only in
/// the unbiased case.
int sample(const Tableau &tab, const GeneralPauli &obs, Rng &rng);

/// Majority-outcome statistics of one observable over a uniform mixture of
/// states: counts of +1 / -1 / unbiased verdicts, the majority sign (0 on a
/// tie) and its probability p_O = max_s (count_s + unbiased/2) / N.
struct SelectionStats {
    int plus = 0;
    int minus = 0;
    int unbiased = 0;
    int majority_sign = 0;
    double p_O = 0.5;
};

SelectionStats selection_stats(const std::vector<const Tableau *> &states,
                               const GeneralPauli &obs);

}  // namespace cqrac
