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

namespace cqrac {

/// Probability that the strict majority of `shots` independent draws, each
/// correct with probability p, lands on the correct side. Ties (possible for
/// even shot counts) count as failure.
double majority_probability(int64_t shots, double p);

/// Smallest shot count s whose majority is correct with probability > f
/// under Binomial(s, p). The minimizer is always odd (an even count never
/// beats the preceding odd one). Throws std::domain_error when p <= 1/2
/// (the requirement diverges) or f is outside (0, 1).
int64_t sampling_requirement_exact(double p, double f);

/// Exact requirement clipped at `cap`: returns cap when p <= 1/2 or when no
/// shot count up to cap reaches f. Total function used by the sweep.
double sampling_requirement_exact_capped(double p, double f, double cap = 1e4);

/// Normal-approximation prefactor 2 * (erf^{-1}(2f - 1))^2, about 2.7055 at
/// f = 0.95.
double normal_prefactor(double f);

/// Normal-approximation requirement: prefactor(f) * p(1-p) / (p - 1/2)^2.
double sampling_requirement_normal(double p, double f);

/// Divergence-capped quadratic requirement metric used by the encoder's cost:
/// u when p <= 1/2, otherwise min(u, p(1-p) / (p - 1/2)^2). Zero at p = 1.
double sampling_requirement_metric(double p, double u = 1e4);

}  // namespace cqrac
