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

#include "cqrac/encoder.hpp"
#include "cqrac/pauli.hpp"
#include "cqrac/rng.hpp"
#include "cqrac/tableau.hpp"

namespace cqrac {

/// Step/budget bookkeeping for one retrieval task. nu is the expected number
/// of unbiased states still unfiltered after T steps: (N_s - N_O) / 2^(T-1).
struct RetrievalPlan {
    int T = 1;
    double nu = 0.0;
    double NO = 0.0;
    int64_t S = 0;           // approximate expected samples:
                             // round(3 (N_s - N_O) + T N_O)
    int64_t hard_bound = 0;  // T * N_s, the worst case
    bool degenerate = false; // requested nu already >= N_s - N_O
};

/// Expected number of deterministic states per observable when each state is
/// deterministic on one context of 2^(n-1)+1 of the 3^n observables.
double observable_load(int n, double Ns);

/// T = ceil(log2(N_s - N_O) - log2(nu) + 1), clamped to >= 1.
RetrievalPlan plan_from_nu(double Ns, double NO, double nu_target);

/// The nu actually achieved by a given step count.
RetrievalPlan plan_from_T(double Ns, double NO, int T);

/// Bookkeeping rule used in selection reports: given a match fraction fe
/// (free position included), target nu = (1 - fe_eff) / 10 with
/// fe_eff = 1 - 3^-n for perfect reports, and T >= 2 chosen so that the
/// achieved nu is nearest the target.
RetrievalPlan plan_from_fe(int n, double Ns, double fe);

/// Exact expectation of the sample count of retrieve_parity:
/// N_O T + (N_s - N_O)(3 - 2^(2-T)).
double expected_samples(double Ns, double NO, int T);

enum class ParityStatus : uint8_t {
    Resolved,    // strict majority among survivors
    TieBroken,   // survivors tied; parity from a logged fair coin
    Unresolved,  // no survivors: no encoded preference detected
};

struct RetrievalOutcome {
    int8_t parity = 0;  // +1 / -1; 0 when unresolved
    ParityStatus status = ParityStatus::Unresolved;
    int64_t survivors = 0;
    int64_t samples_used = 0;
    /// Ground-truth audit: surviving states that are in fact unbiased on the
    /// queried observable (known to the simulator, not to a real receiver).
    int64_t unfiltered_unbiased = 0;
};

/// One transcript line per performed measurement.
struct TranscriptRow {
    uint64_t trial = 0;
    std::string observable;
    int step = 0;
    uint32_t state_id = 0;  // preparation id
    int8_t outcome = 0;
    bool discarded = false;
};

/// Filtering retrieval of one observable's preferred parity: at every step
/// each still-alive state is measured once on a fresh copy; a state whose
/// outcome differs from its previous one is discarded. Survivors vote once
/// each. Deterministic states are never discarded.
RetrievalOutcome retrieve_parity(const std::vector<StabilizerState> &states,
                                 const PauliWord &obs, int T, Rng &rng,
                                 std::vector<TranscriptRow> *transcript = nullptr,
                                 uint64_t trial = 0);

/// Joint filtering retrieval of several commuting observables from one shared
/// copy per state per step (sequential collapsing measurements); each
/// observable is filtered independently on the shared outcomes. samples_used
/// counts state copies and is identical across members.
std::vector<RetrievalOutcome> retrieve_group(
    const std::vector<StabilizerState> &states,
    const std::vector<PauliWord> &members, int T, Rng &rng,
    std::vector<TranscriptRow> *transcript = nullptr, uint64_t trial = 0);

struct BitOutcome {
    int bit = -1;  // 0 / 1; -1 when either parity is unresolved
    bool resolved = false;
    RetrievalOutcome first;
    RetrievalOutcome second;
};

/// XOR decode of couple l: bit 0 when both retrieved parities agree. When the
/// couple commutes both parities are read from one shared sample stream;
/// otherwise the two observables are retrieved independently.
BitOutcome retrieve_bit(const Manifest &manifest, size_t couple_index, int T,
                        Rng &rng,
                        std::vector<TranscriptRow> *transcript = nullptr,
                        uint64_t trial = 0);

/// Majority success of an r-repetition majority vote when each repetition
/// succeeds independently with probability fbar: sum of the upper binomial
/// tail from (r+1)/2. Requires odd r.
double amplification_success(double fbar, int r);

struct AmplifiedResult {
    std::vector<uint8_t> bits;         // majority-voted data fragment
    std::vector<int> votes;            // per-bit count of repetitions voting 1
    std::vector<int> resolved_counts;  // per-bit resolved repetitions
};

/// Repetition retrieval: the data is encoded r times (odd r), each repetition
/// under its own coupling scheme (repetition 0 uses the standard pairing, the
/// others use seeded reshuffles); every repetition retrieves each requested
/// bit, and the per-bit majority wins. Unresolved repetitions abstain.
AmplifiedResult amplified_retrieve(const std::vector<uint8_t> &data, int n,
                                   int r, int T, const EncodeOptions &base,
                                   uint64_t seed);

/// Transcript serialization: header trial,observable,step,state_id,outcome,
/// discarded plus one line per row.
std::string transcript_csv(const std::vector<TranscriptRow> &rows);

}  // namespace cqrac
