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

namespace cqrac {

/// One random two-qubit mixed state, reduced to its nine full-weight
/// expectation values. The state is produced by a fixed parametrized circuit
/// with classical randomness: a bit-flip channel RNot(x_q) on each qubit
/// (apply X with probability x_q, x_q uniform), then a layer of independent
/// single-qubit rotations U(theta, phi) = Rz(phi) Rx(-pi/2) Rz(theta)
/// Rx(pi/2) with theta uniform on [0, pi] and phi uniform on [0, 2*pi],
/// a CNOT, and a second independent rotation layer.
struct TwoQubitSample {
    /// Indexed by canonical word index (XX, XY, XZ, YX, ..., ZZ).
    std::array<double, 9> expectations;
};

/// Deterministic function of (seed, index): sample `index` of the stream.
/// Thread-invariant by construction.
TwoQubitSample sweep_sample(uint64_t seed, uint64_t index);

/// Classification bucket of one preferred-parity configuration.
struct SweepRow {
    int config_id = 0;          // bit k set when word k's expectation >= 0
    uint64_t occurrences = 0;
    /// Smallest observed average over the nine observables of the exact
    /// shot requirement at f = 0.95, divergence-capped at 1e4. Meaningful
    /// only when occurrences > 0.
    double min_avg_smix = 0.0;
    int restrictions = 0;       // satisfied grid restrictions of the signs
    bool star = false;          // all three rows or all three columns hold
};

struct SweepResult {
    uint64_t samples = 0;
    uint64_t seed = 0;
    std::array<SweepRow, 512> rows;
};

/// Generates and classifies `samples` random states. `threads` = 0 picks the
/// hardware concurrency; the result is identical for every thread count.
SweepResult sweep_2q(uint64_t samples, uint64_t seed, unsigned threads = 0);

/// CSV rendering: header plus one row per configuration (512 lines), with an
/// empty requirement field for configurations that never occurred.
std::string sweep_csv(const SweepResult &result);

}  // namespace cqrac
