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
#include <string>
#include <vector>

#include "cqrac/circuit.hpp"
#include "cqrac/contexts.hpp"
#include "cqrac/rng.hpp"

namespace cqrac {

/// Pairing of the 3^n full-weight observables into m = (3^n - 1) / 2 ordered
/// couples plus one uncoupled leftover. Data bit l is carried by whether the
/// two observables of couple l receive equal or different preferred parities;
/// the leftover observable carries no data.
struct CouplingScheme {
    int n = 0;
    std::vector<std::array<uint64_t, 2>> couples;
    uint64_t uncoupled = 0;

    /// Alphabetical pairing (0,1), (2,3), ...; uncoupled = 3^n - 1 (Z...Z).
    static CouplingScheme standard(int n);
    /// Seeded reshuffle of the observable order, paired consecutively; the
    /// last shuffled index becomes the uncoupled one. Used by repetition
    /// retrieval, where each repetition needs an independent pairing.
    static CouplingScheme shuffled(int n, uint64_t seed);

    size_t bit_count() const { return couples.size(); }
};

/// A preferred parity per observable, with the uncoupled index treated as a
/// free position (it carries no data and is excluded from match distances).
struct ParityConfiguration {
    int n = 0;
    std::vector<int8_t> signs;  // 3^n entries, each +1 or -1
    uint64_t wildcard = 0;

    /// Data read-back: bit l = 0 when the two signs of couple l agree.
    std::vector<uint8_t> decode(const CouplingScheme &scheme) const;
};

/// One of the 2^m sign assignments compatible with fixed data: bit l selects
/// which of the two compatible sign pairs represents bit l of the data
/// (for bit 0: (+,+) vs (-,-); for bit 1: (+,-) vs (-,+)).
struct AssignmentChoice {
    std::vector<uint8_t> bits;
};

/// (data, choice) -> configuration. The free position gets sign +1.
ParityConfiguration apply_choice(const CouplingScheme &scheme,
                                 const std::vector<uint8_t> &data,
                                 const AssignmentChoice &choice);

/// Inverse of apply_choice given the same scheme (wildcard ignored).
AssignmentChoice read_choice(const CouplingScheme &scheme,
                             const ParityConfiguration &config);

/// Catalog of every distinct preparable state, grouped by the context each
/// state is an eigenstate of, with the deterministic member signs packed into
/// a bitmask. Materialized once per n and cached (n <= 6).
struct EigenvalueTable {
    int n = 0;
    std::vector<Context> contexts;  // the generator catalog

    struct Row {
        uint32_t params_id = 0;   // lowest preparation id of the state
        uint32_t context = 0;     // index into contexts
        uint64_t minus_mask = 0;  // bit j set when member j has sign -1
    };
    std::vector<Row> rows;              // grouped by context, params ascending
    std::vector<size_t> context_begin;  // size contexts.size() + 1

    struct Membership {
        uint32_t context = 0;
        uint8_t position = 0;  // index of the word within context members
    };
    std::vector<std::vector<Membership>> word_contexts;  // per word index

    static const EigenvalueTable &instance(int n);
};

/// Stage-1 score of a configuration: with M_i the number of catalog states
/// whose sign pattern differs from the configuration in exactly i in-context
/// positions (wildcard excluded), returns 100*M_0 + 10*M_1 + M_2.
int64_t score_target(const ParityConfiguration &config,
                     const EigenvalueTable &table);

/// Stage 1: hill-climb over assignment-choice bits by single random flips,
/// accepting non-decreasing scores. The returned configuration always decodes
/// back to `data` exactly, independent of search quality.
ParityConfiguration optimize_target(const CouplingScheme &scheme,
                                    const std::vector<uint8_t> &data,
                                    int64_t iterations, Rng &rng);

/// Retrieval bookkeeping attached to a selection (filled via the plan rules
/// of the retrieval module) plus the match report.
struct SelectionReport {
    int matched = 0;       // non-wildcard observables with a strict majority
                           // of deterministic states on the target sign
    double fe = 0.0;       // (matched + 1) / 3^n; the free position always
                           // counts as matched under this convention
    double fe_strict = 0.0;  // matched / (3^n - 1), free position excluded
    std::vector<double> p_target;  // per-observable majority probability
                                   // toward the target sign
    double cost = 0.0;     // N_s * mean of kept per-observable metrics
    double NO = 0.0;       // expected deterministic states per observable
    int T = 0;
    double nu = 0.0;
    int64_t S = 0;
};

struct StateSelection {
    int n = 0;
    ParityConfiguration target;
    std::vector<CircuitParams> states;  // ascending preparation id
    SelectionReport report;
    std::vector<double> audit;  // accepted-step costs when recorded
};

struct SelectOptions {
    int tolerance_i = 0;          // worst observables excluded from the cost
    int64_t iterations = 20000;
    double branch_probability = 0.05;
    int branch_depth = 3;
    double sparsity_penalty = 0.01;  // additive cost per included state
    int size_target = 0;   // > 0: fixed-size swap search maximizing matches
    double metric_cap = 1e4;
    bool record_audit = false;
};

/// Stage 2: from the pool of per-context best-matching states (ties kept),
/// search inclusion subsets minimizing N_s * <S'_mix> with the tolerated
/// worst observables dropped; strict-decrease acceptance with occasional
/// unconditional branches, returning the best subset visited. With
/// size_target > 0, searches fixed-size subsets via swaps, maximizing the
/// match count first and breaking ties toward lower cost.
StateSelection select_states(const ParityConfiguration &target,
                             const SelectOptions &options, Rng &rng);

/// Recomputes a selection report from scratch (tableau expectations only; no
/// reuse of search bookkeeping). Sets the free position of `target` to the
/// majority sign of the mixture before scoring it.
SelectionReport selection_report(int n, const std::vector<CircuitParams> &states,
                                 ParityConfiguration &target, int tolerance_i,
                                 double metric_cap);

struct EncodeOptions {
    uint64_t seed = 0;
    int64_t stage1_iterations = 20000;
    SelectOptions select;
};

/// Full pipeline: optimize a target for the data, then select states for it.
StateSelection encode(const std::vector<uint8_t> &data, int n,
                      const EncodeOptions &options);
StateSelection encode_with_scheme(const CouplingScheme &scheme,
                                  const std::vector<uint8_t> &data,
                                  const EncodeOptions &options);

/// First m binary fractional digits of pi/4, most significant first.
std::vector<uint8_t> pi_quarter_bits(size_t m);

/// Selection manifest serialization: everything a retriever needs, and
/// nothing tied to the producing process (byte-identical across reruns).
std::string manifest_json(const StateSelection &selection,
                          const CouplingScheme &scheme,
                          const std::vector<uint8_t> &data, uint64_t seed,
                          int64_t budget);

struct Manifest {
    int n = 0;
    uint64_t seed = 0;
    int64_t budget = 0;
    std::vector<uint8_t> data;
    CouplingScheme scheme;
    ParityConfiguration target;
    std::vector<CircuitParams> states;
    SelectionReport report;
};

Manifest parse_manifest(const std::string &text);

}  // namespace cqrac
