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

#include <complex>
#include <vector>

#include "cqrac/circuit.hpp"
#include "cqrac/pauli.hpp"

namespace cqrac::dense {

/// Statevector oracle used to validate the tableau engine on small systems.
/// Amplitude index bit q-1 holds the computational value of qubit q.
using cvec = std::vector<std::complex<double>>;

/// |0...0> on n qubits. Capped at n = 12 wires (the oracle contract covers
/// data registers up to n = 6; the extra headroom is for readout ancillas).
cvec zero_state(uint32_t n);

void apply_gate(cvec &state, uint32_t n, const Gate &g);

/// Runs every gate of a listing on |0...0>. Measure ops are rejected.
cvec run(const Circuit &c);

/// Statevector of the preparation circuit for `params` (n <= 6).
cvec build_state_vector(const CircuitParams &params);

/// <psi| P |psi> by explicit operator action.
std::complex<double> expectation(const cvec &state, const GeneralPauli &p);

/// Rounds an expectation to a verdict: +1 / -1 when within `tol` of +-1,
/// 0 when within `tol` of 0; throws otherwise (a Pauli expectation of a
/// stabilizer state can take no other value).
int verdict(const cvec &state, const GeneralPauli &p, double tol = 1e-9);

}  // namespace cqrac::dense
