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

namespace cqrac {

// ---------------------------------------------------------------------------
// Channel capacity of a mismatch-tolerant carrier.
// ---------------------------------------------------------------------------

/// Binary entropy H2(p) = -p log2 p - (1-p) log2 (1-p); 0 at both endpoints.
/// Throws std::domain_error outside [0, 1].
double binary_entropy(double p);

/// Usable information per stored sign when a fraction eps of signs may
/// disagree: g(eps) = 1 - H2(eps). Throws std::domain_error for eps outside
/// [0, 1/2) — at eps = 1/2 the carrier is pure noise.
double tolerance_capacity(double eps);

/// Same quantity summed as (1/ln 2) * sum_{j>=1} (1-2 eps)^{2j} / (2j (2j-1)),
/// truncated once a term falls below rel_tol of the running sum. Used as an
/// independent cross-check of the closed form.
double tolerance_capacity_series(double eps, double rel_tol = 1e-15);

// ---------------------------------------------------------------------------
// Ensemble sizing.
// ---------------------------------------------------------------------------

/// States needed to pin down all (3^n - 1)/2 data bits when each state
/// resolves one size-(2^(n-1)+1) commuting family up to tolerance eps:
/// (3/2)^n / g(eps).
double states_required_continuous(int n, double eps);

/// The same, rounded to the nearest whole state.
int64_t states_required(int n, double eps);

/// Probability that a uniformly random family eigenstate is deterministic on
/// one fixed observable: (2^(n-1) + 1) / 3^n.
double deterministic_probability(int n);

// ---------------------------------------------------------------------------
// Expected retrieval quality of a random ensemble.
// ---------------------------------------------------------------------------

/// How an even split of deterministic voters is scored. A strict majority is
/// always required; the half-credit variant additionally awards 1/2 on even
/// ties (it models a fair coin flip as half a success).
enum class TiePolicy { StrictMajority, HalfCreditEven };

struct FidelityEstimate {
  int64_t states = 0;              ///< ensemble size N_s used
  double p_deterministic = 0.0;    ///< per-state chance of covering the query
  double mean_deterministic = 0.0; ///< expected deterministic voters
  double f_e = 0.0;                ///< per-observable preferred-parity accuracy
  double f_bar = 0.0;              ///< per-bit success f_e^2 + (1 - f_e)^2
};

/// Averages the majority vote of Binomial(N_s, p_deterministic) voters, each
/// agreeing with the stored sign with probability 1 - eps; zero voters give
/// 1/2. The binomial sum truncates once the count exceeds the mean by 10 and
/// the probability mass drops below 1e-18.
FidelityEstimate expected_fidelity(int n, double eps,
                                   TiePolicy policy = TiePolicy::StrictMajority);

// ---------------------------------------------------------------------------
// Filter-length and sample-budget scaling.
// ---------------------------------------------------------------------------

struct ScalingPlan {
  int64_t states = 0;          ///< rounded ensemble size
  int64_t deterministic = 0;   ///< voters per observable, rounded up to >= 1
  double steps = 0.0;          ///< filter length hitting the residual target
  double samples = 0.0;        ///< 3 (N_s - N_O) + steps * N_O
  double steps_closed = 0.0;   ///< n log2(3/2) + 9
  double samples_closed = 0.0; ///< 4.155 (3/2)^n + n log2(3/2) + 6
};

/// General-path plan at tolerance eps and residual target (expected unbiased
/// survivors after filtering), alongside the asymptotic closed forms they
/// track within 1%.
ScalingPlan scaling_plan(int n, double eps = 0.048,
                         double residual = 0.00552427172801990253);

// ---------------------------------------------------------------------------
// Majority-vote amplification across repeated encodings.
// ---------------------------------------------------------------------------

/// Success of a strict majority over `repetitions` independent retrievals,
/// each correct with probability f_bar.
double amplified_success(double f_bar, int64_t repetitions);

/// Smallest odd repetition count whose majority reaches target_f. Throws
/// std::domain_error when f_bar <= 1/2 (no amount of voting helps) or
/// target_f is outside (0, 1).
int64_t repetitions_for(double f_bar, double target_f);

/// Curvature constant of the normal approximation,
/// 2 f_bar (1 - f_bar) / (f_bar - 1/2)^2; about 49.74 at f_bar = 0.5983.
double repetition_rate_constant(double f_bar);

/// Normal-approximation repetition estimate:
/// rate_constant * erfc_inv(2 - 2 target_f)^2.
double repetitions_normal(double f_bar, double target_f);

// ---------------------------------------------------------------------------
// Optimal mismatch tolerance.
// ---------------------------------------------------------------------------

struct ToleranceOptimum {
  double epsilon = 0.0;      ///< refined minimizer
  double grid_epsilon = 0.0; ///< coarse-grid (step 0.001) minimizer
  double objective = 0.0;    ///< repetitions * samples at epsilon
  double flat_low = 0.0;     ///< grid interval within 0.1% of the minimum
  double flat_high = 0.0;
};

/// Minimizes total sampling effort repetitions(eps) * samples(eps) over the
/// tolerance, at fixed final fidelity target_f: repetitions from the normal
/// approximation at f_bar(eps), samples from the general-path plan. Coarse
/// 0.001 grid scan followed by golden-section refinement; the flat interval
/// records how shallow the minimum is.
ToleranceOptimum optimal_tolerance(int n, double target_f);

// ---------------------------------------------------------------------------
// Classical and quantum packing baselines.
// ---------------------------------------------------------------------------

/// Exact best-guess success when `bits_per_carrier` uniform bits share one
/// carrier and the decoder answers with the carrier's most common bit:
/// E[max(H, mu - H)] / mu with H ~ Binomial(mu, 1/2).
double rac_success_exact(int64_t bits_per_carrier);

/// Normal-limit success of the same scheme at carrier ratio k/m:
/// 1/2 + sqrt((k/m) / (2 pi)).
double rac_success_normal(double k_over_m);

/// Dispatching form taking the load m/k: the exact binomial value when the
/// load is a small whole number, the normal limit otherwise.
double rac_success(double m_over_k);

/// Success bounds for packing m bits into k qubits with unbiased-basis codes:
/// lower 1/2 + sqrt((k/m) / (1.5 pi)), upper 1/2 + sqrt(k/m) / 2.
double qrac_lower_bound(double k_over_m);
double qrac_upper_bound(double k_over_m);

/// Qubits spent per stored bit by the ensemble scheme at width n:
/// repetitions * n * N_s(n, eps) * T(n) / ((3^n - 1) / 2), with the
/// continuous ensemble size and the closed-form filter length.
double carrier_ratio(int n, double eps = 0.048, int64_t repetitions = 1);

struct CrossoverReport {
  double epsilon = 0.0;        ///< tolerance the comparison is evaluated at
  double f_bar_star = 0.0;     ///< converged per-bit success at that tolerance
  int64_t repetitions = 0;     ///< amplification reaching the fidelity target
  double rac_threshold = 0.0;  ///< k/m below which the classical code loses
  double qrac_threshold = 0.0; ///< k/m below which the unbiased-basis bound loses
  int beats_rac = 0;           ///< smallest even n past the classical code
  int beats_qrac_upper = 0;    ///< smallest even n past the quantum upper bound
  int beats_identity = 0;      ///< smallest even n with amplified k < m
};

/// Finds the smallest even widths at which the ensemble scheme (a) retrieves
/// bits better than the classical majority code at equal carrier ratio,
/// (b) beats the unbiased-basis upper bound, and (c) amplified to target_f
/// still uses fewer qubits than bits stored.
CrossoverReport crossover_report(double target_f = 0.999);

// ---------------------------------------------------------------------------
// Unbiased-basis code comparison table.
// ---------------------------------------------------------------------------

/// Per-bit success of a code that retrieves one base-d digit with probability
/// f_dit, rescaled to the binary alphabet: f_dit^(1 / log2 d). Throws
/// std::domain_error for d < 2 or f_dit outside (0, 1].
double mub_bit_success(double f_dit, int d);

struct MubComparisonRow {
  int d = 0;          ///< digit alphabet size
  double f_dit = 0.0; ///< published per-digit success
  double f_bit = 0.0; ///< rescaled per-bit success
};

/// The six published unbiased-basis codes with their per-bit equivalents.
std::vector<MubComparisonRow> mub_comparison_table();

// ---------------------------------------------------------------------------
// Large-width storage applications.
// ---------------------------------------------------------------------------

struct ApplicationReport {
  int n = 0;                       ///< carrier width (even)
  double target_f = 0.0;           ///< final per-bit fidelity
  int64_t repetitions = 0;         ///< amplification used
  double epsilon = 0.0;            ///< tolerance used
  double f_bar = 0.0;              ///< converged single-copy per-bit success
  double states_continuous = 0.0;  ///< unrounded ensemble size
  double steps_unrounded = 0.0;    ///< closed-form filter length
  int64_t steps_rounded = 0;       ///< nearest whole filter length
  double stored_bits = 0.0;        ///< m = (3^n - 1) / 2
  double ratio = 0.0;              ///< qubits per stored bit, unrounded steps
  double ratio_rounded_steps = 0.0;///< same with the rounded filter length
  double log10_ratio = 0.0;        ///< log-domain evaluation of `ratio`
};

/// Qubit cost per stored bit at width n amplified to target_f. The headline
/// ratio keeps the filter length unrounded; the rounded variant is reported
/// alongside. Evaluated in extended precision (the stored-bit count overflows
/// doubles near n = 600) and cross-checked against a log-domain computation.
/// Throws std::invalid_argument for odd or non-positive n.
ApplicationReport application_report(int n, double target_f = 0.999);

// ---------------------------------------------------------------------------
// Tolerance sweeps and artifact emitters.
// ---------------------------------------------------------------------------

struct CurvePoint {
  int n = 0;
  double epsilon = 0.0;
  double f_e = 0.0;
  double f_bar = 0.0;
};

/// f_e / f_bar as functions of the tolerance for several widths; used to show
/// the curves collapsing onto a single master curve at large tolerance.
std::vector<CurvePoint> tolerance_curves(const std::vector<int> &widths,
                                         double eps_low = 0.01,
                                         double eps_high = 0.45,
                                         double eps_step = 0.01);

/// CSV with header n,epsilon,f_e,f_bar.
std::string curves_csv(const std::vector<CurvePoint> &points);

/// JSON object with the thresholds and crossover widths.
std::string crossovers_json(const CrossoverReport &report);

/// CSV with header d,f_dit,f_bit (f_bit printed to four decimals).
std::string mub_table_csv();

/// JSON object with every field of the report.
std::string application_json(const ApplicationReport &report);

}  // namespace cqrac
