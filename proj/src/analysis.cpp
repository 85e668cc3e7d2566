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

#include "cqrac/analysis.hpp"

#include <mpfr.h>

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "cqrac/sampling.hpp"
#include "nlohmann/json.hpp"

namespace cqrac {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2Of3Halves = 0.5849625007211562;  // log2(3/2)

double log2_of(double x) { return std::log2(x); }

}  // namespace

// ---------------------------------------------------------------------------
// Channel capacity.
// ---------------------------------------------------------------------------

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("binary entropy needs p in [0, 1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double tolerance_capacity(double eps) {
    if (!(eps >= 0.0 && eps < 0.5))
        throw std::domain_error("tolerance capacity needs eps in [0, 1/2)");
    return 1.0 - binary_entropy(eps);
}

double tolerance_capacity_series(double eps, double rel_tol) {
    if (!(eps >= 0.0 && eps < 0.5))
        throw std::domain_error("tolerance capacity needs eps in [0, 1/2)");
    if (!(rel_tol > 0.0)) throw std::domain_error("rel_tol must be positive");
    const double x2 = (1.0 - 2.0 * eps) * (1.0 - 2.0 * eps);
    double power = 1.0;
    double sum = 0.0;
    for (int j = 1; j < 1000000; ++j) {
        power *= x2;
        const double term = power / (2.0 * j * (2.0 * j - 1.0));
        sum += term;
        if (term < rel_tol * sum) break;
    }
    return sum / std::log(2.0);
}

// ---------------------------------------------------------------------------
// Ensemble sizing.
// ---------------------------------------------------------------------------

double states_required_continuous(int n, double eps) {
    if (n < 1) throw std::invalid_argument("width must be positive");
    return std::pow(1.5, n) / tolerance_capacity(eps);
}

int64_t states_required(int n, double eps) {
    const double cont = states_required_continuous(n, eps);
    if (cont >= 9.0e18)
        throw std::length_error("state count exceeds 64-bit range");
    return std::llround(cont);
}

double deterministic_probability(int n) {
    if (n < 1) throw std::invalid_argument("width must be positive");
    return (std::pow(2.0, n - 1) + 1.0) / std::pow(3.0, n);
}

// ---------------------------------------------------------------------------
// Expected retrieval quality.
// ---------------------------------------------------------------------------

FidelityEstimate expected_fidelity(int n, double eps, TiePolicy policy) {
    FidelityEstimate out;
    out.states = states_required(n, eps);
    out.p_deterministic = deterministic_probability(n);
    const double p = out.p_deterministic;
    const auto ns = static_cast<double>(out.states);
    out.mean_deterministic = ns * p;

    // Voter-count distribution: Binomial(N_s, p), walked by recurrence from
    // the zero-voter mass. Truncated once safely past the mean with
    // negligible remaining mass.
    const double vote_ok = 1.0 - eps;
    double pmf = std::exp(ns * std::log1p(-p));
    const double odds = p / (1.0 - p);
    double f_e = 0.0;
    for (int64_t k = 0;; ++k) {
        double success;
        if (k == 0) {
            success = 0.5;
        } else {
            success = majority_probability(k, vote_ok);
            if (policy == TiePolicy::HalfCreditEven && k % 2 == 0 && eps > 0.0) {
                const auto kd = static_cast<double>(k);
                const double log_tie = std::lgamma(kd + 1.0) -
                                       2.0 * std::lgamma(kd / 2.0 + 1.0) +
                                       (kd / 2.0) * std::log(vote_ok * eps);
                success += 0.5 * std::exp(log_tie);
            }
        }
        f_e += pmf * success;
        if (k >= out.states) break;
        if (static_cast<double>(k) > out.mean_deterministic + 10.0 &&
            pmf < 1e-18)
            break;
        pmf *= (ns - static_cast<double>(k)) / (static_cast<double>(k) + 1.0) *
               odds;
    }
    out.f_e = f_e;
    out.f_bar = f_e * f_e + (1.0 - f_e) * (1.0 - f_e);
    return out;
}

// ---------------------------------------------------------------------------
// Filter-length and sample-budget scaling.
// ---------------------------------------------------------------------------

ScalingPlan scaling_plan(int n, double eps, double residual) {
    if (!(residual > 0.0))
        throw std::domain_error("residual target must be positive");
    ScalingPlan plan;
    plan.states = states_required(n, eps);
    const double mean_det =
        static_cast<double>(plan.states) * deterministic_probability(n);
    plan.deterministic = std::max<int64_t>(1, std::llround(mean_det));
    const double unbiased =
        static_cast<double>(plan.states - plan.deterministic);
    if (unbiased < 1.0)
        throw std::domain_error("no unbiased states left to filter");
    plan.steps = log2_of(unbiased / residual) + 1.0;
    plan.samples = 3.0 * unbiased +
                   plan.steps * static_cast<double>(plan.deterministic);
    plan.steps_closed = n * kLog2Of3Halves + 9.0;
    plan.samples_closed =
        4.155 * std::pow(1.5, n) + n * kLog2Of3Halves + 6.0;
    return plan;
}

// ---------------------------------------------------------------------------
// Amplification.
// ---------------------------------------------------------------------------

double amplified_success(double f_bar, int64_t repetitions) {
    return majority_probability(repetitions, f_bar);
}

int64_t repetitions_for(double f_bar, double target_f) {
    if (f_bar <= 0.5 || f_bar > 1.0)
        throw std::domain_error(
            "majority voting cannot amplify a per-bit success at or below 1/2");
    return sampling_requirement_exact(f_bar, target_f);
}

double repetition_rate_constant(double f_bar) {
    if (f_bar <= 0.5 || f_bar > 1.0)
        throw std::domain_error("rate constant needs f_bar in (1/2, 1]");
    const double d = f_bar - 0.5;
    return 2.0 * f_bar * (1.0 - f_bar) / (d * d);
}

double repetitions_normal(double f_bar, double target_f) {
    if (target_f <= 0.0 || target_f >= 1.0)
        throw std::domain_error("target fidelity must lie in (0, 1)");
    const double z = boost::math::erfc_inv(2.0 - 2.0 * target_f);
    return repetition_rate_constant(f_bar) * z * z;
}

// ---------------------------------------------------------------------------
// Optimal mismatch tolerance.
// ---------------------------------------------------------------------------

namespace {

// Total effort repetitions(eps) * samples(eps) at fixed width and fidelity
// target; the repetition factor uses the normal approximation, the sample
// factor the general-path plan with the voter count left unrounded.
double effort_objective(int n, double eps, double z_squared) {
    const FidelityEstimate fid = expected_fidelity(n, eps);
    if (fid.f_bar <= 0.5 + 1e-12)
        return std::numeric_limits<double>::infinity();
    const double unbiased =
        static_cast<double>(fid.states) - fid.mean_deterministic;
    const double steps = log2_of(unbiased) + 8.5;
    const double samples = 3.0 * unbiased + steps * fid.mean_deterministic;
    return repetition_rate_constant(fid.f_bar) * z_squared * samples;
}

}  // namespace

ToleranceOptimum optimal_tolerance(int n, double target_f) {
    if (target_f <= 0.0 || target_f >= 1.0)
        throw std::domain_error("target fidelity must lie in (0, 1)");
    const double z = boost::math::erfc_inv(2.0 - 2.0 * target_f);
    const double z2 = z * z;

    constexpr double kStep = 0.001;
    constexpr int kFirst = 1;    // eps = 0.001
    constexpr int kLast = 449;   // eps = 0.449
    std::vector<double> value(kLast + 1,
                              std::numeric_limits<double>::infinity());
    int best = kFirst;
    for (int i = kFirst; i <= kLast; ++i) {
        value[i] = effort_objective(n, i * kStep, z2);
        if (value[i] < value[best]) best = i;
    }

    ToleranceOptimum opt;
    opt.grid_epsilon = best * kStep;

    // Flat-bottom interval: contiguous grid neighborhood within 0.1% of the
    // minimum, a measure of how forgiving the tolerance choice is.
    int lo = best, hi = best;
    const double ceiling = value[best] * 1.001;
    while (lo > kFirst && value[lo - 1] <= ceiling) --lo;
    while (hi < kLast && value[hi + 1] <= ceiling) ++hi;
    opt.flat_low = lo * kStep;
    opt.flat_high = hi * kStep;

    // Golden-section refinement inside the bracketing grid cells. The
    // objective has small steps where the rounded state count jumps, so the
    // best point ever evaluated is kept rather than the final bracket.
    double a = std::max(kStep * 0.5, (best - 1) * kStep);
    double b = std::min(kLast * kStep, (best + 1) * kStep);
    double best_eps = opt.grid_epsilon;
    double best_val = value[best];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = effort_objective(n, x1, z2);
    double f2 = effort_objective(n, x2, z2);
    for (int iter = 0; iter < 80; ++iter) {
        if (f1 < best_val) best_val = f1, best_eps = x1;
        if (f2 < best_val) best_val = f2, best_eps = x2;
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = effort_objective(n, x1, z2);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = effort_objective(n, x2, z2);
        }
    }
    opt.epsilon = best_eps;
    opt.objective = best_val;
    return opt;
}

// ---------------------------------------------------------------------------
// Classical and quantum packing baselines.
// ---------------------------------------------------------------------------

double rac_success_exact(int64_t bits_per_carrier) {
    if (bits_per_carrier < 1)
        throw std::domain_error("carrier load must be positive");
    const auto mu = static_cast<double>(bits_per_carrier);
    const double log_half = std::log(0.5);
    double expectation = 0.0;
    for (int64_t h = 0; h <= bits_per_carrier; ++h) {
        const auto hd = static_cast<double>(h);
        const double log_pmf = std::lgamma(mu + 1.0) - std::lgamma(hd + 1.0) -
                               std::lgamma(mu - hd + 1.0) + mu * log_half;
        expectation += std::exp(log_pmf) * std::max(hd, mu - hd);
    }
    return expectation / mu;
}

double rac_success_normal(double k_over_m) {
    if (!(k_over_m >= 0.0))
        throw std::domain_error("carrier ratio must be non-negative");
    return 0.5 + std::sqrt(k_over_m / (2.0 * kPi));
}

double rac_success(double m_over_k) {
    if (!(m_over_k > 0.0)) throw std::domain_error("load must be positive");
    const double nearest = std::round(m_over_k);
    if (nearest >= 1.0 && nearest <= 4096.0 &&
        std::abs(m_over_k - nearest) < 1e-9)
        return rac_success_exact(static_cast<int64_t>(nearest));
    return rac_success_normal(1.0 / m_over_k);
}

double qrac_lower_bound(double k_over_m) {
    if (!(k_over_m >= 0.0))
        throw std::domain_error("carrier ratio must be non-negative");
    return 0.5 + std::sqrt(k_over_m / (1.5 * kPi));
}

double qrac_upper_bound(double k_over_m) {
    if (!(k_over_m >= 0.0))
        throw std::domain_error("carrier ratio must be non-negative");
    return 0.5 + std::sqrt(k_over_m) / 2.0;
}

double carrier_ratio(int n, double eps, int64_t repetitions) {
    if (repetitions < 1)
        throw std::domain_error("repetition count must be positive");
    const double states = states_required_continuous(n, eps);
    const double steps = n * kLog2Of3Halves + 9.0;
    const double stored = (std::pow(3.0, n) - 1.0) / 2.0;
    return static_cast<double>(repetitions) * n * states * steps / stored;
}

CrossoverReport crossover_report(double target_f) {
    CrossoverReport report;
    const ToleranceOptimum opt = optimal_tolerance(16, target_f);
    report.epsilon = opt.epsilon;
    report.f_bar_star = expected_fidelity(16, opt.epsilon).f_bar;
    report.repetitions = repetitions_for(report.f_bar_star, target_f);
    const double gap = report.f_bar_star - 0.5;
    report.rac_threshold = 2.0 * kPi * gap * gap;
    report.qrac_threshold = 4.0 * gap * gap;
    for (int n = 2; n <= 64; n += 2) {
        const double bare = carrier_ratio(n, report.epsilon, 1);
        if (report.beats_rac == 0 && bare < report.rac_threshold)
            report.beats_rac = n;
        if (report.beats_qrac_upper == 0 && bare < report.qrac_threshold)
            report.beats_qrac_upper = n;
        if (report.beats_identity == 0 &&
            carrier_ratio(n, report.epsilon, report.repetitions) < 1.0)
            report.beats_identity = n;
        if (report.beats_rac && report.beats_qrac_upper &&
            report.beats_identity)
            break;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Unbiased-basis code comparison.
// ---------------------------------------------------------------------------

double mub_bit_success(double f_dit, int d) {
    if (d < 2) throw std::domain_error("digit alphabet needs d >= 2");
    if (!(f_dit > 0.0 && f_dit <= 1.0))
        throw std::domain_error("per-digit success must lie in (0, 1]");
    return std::pow(f_dit, 1.0 / std::log2(static_cast<double>(d)));
}

std::vector<MubComparisonRow> mub_comparison_table() {
    const std::vector<std::pair<int, double>> published = {
        {2, 0.789}, {3, 0.637}, {4, 0.5424},
        {5, 0.4700}, {7, 0.3720}, {8, 0.3372},
    };
    std::vector<MubComparisonRow> rows;
    rows.reserve(published.size());
    for (const auto &[d, f_dit] : published)
        rows.push_back({d, f_dit, mub_bit_success(f_dit, d)});
    return rows;
}

// ---------------------------------------------------------------------------
// Large-width storage applications.
// ---------------------------------------------------------------------------

ApplicationReport application_report(int n, double target_f) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("width must be even and positive");
    ApplicationReport report;
    report.n = n;
    report.target_f = target_f;
    report.epsilon = 0.048;

    // The per-bit success converges quickly with width; evaluate it at the
    // requested width while the state count still fits exact integer
    // arithmetic, else at the largest width that does.
    const int fid_width = std::min(n, 100);
    report.f_bar = expected_fidelity(fid_width, report.epsilon).f_bar;
    report.repetitions = repetitions_for(report.f_bar, target_f);

    const double capacity = tolerance_capacity(report.epsilon);
    report.steps_unrounded = n * kLog2Of3Halves + 9.0;
    report.steps_rounded = std::llround(report.steps_unrounded);

    // Extended precision for the stored-bit count and the ratio; 256 bits
    // holds 3^n exactly up to n = 161 and keeps ample headroom beyond.
    mpfr_t states, stored, work, ratio;
    mpfr_inits2(256, states, stored, work, ratio, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_d(states, 1.5, MPFR_RNDN);
    mpfr_pow_ui(states, states, static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_div_d(states, states, capacity, MPFR_RNDN);
    report.states_continuous = mpfr_get_d(states, MPFR_RNDN);

    mpfr_ui_pow_ui(stored, 3, static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_sub_ui(stored, stored, 1, MPFR_RNDN);
    mpfr_div_ui(stored, stored, 2, MPFR_RNDN);
    report.stored_bits = mpfr_get_d(stored, MPFR_RNDN);

    const double front =
        static_cast<double>(report.repetitions) * static_cast<double>(n);
    mpfr_mul_d(work, states, front * report.steps_unrounded, MPFR_RNDN);
    mpfr_div(ratio, work, stored, MPFR_RNDN);
    report.ratio = mpfr_get_d(ratio, MPFR_RNDN);

    mpfr_mul_d(work, states,
               front * static_cast<double>(report.steps_rounded), MPFR_RNDN);
    mpfr_div(ratio, work, stored, MPFR_RNDN);
    report.ratio_rounded_steps = mpfr_get_d(ratio, MPFR_RNDN);
    mpfr_clears(states, stored, work, ratio, static_cast<mpfr_ptr>(nullptr));

    // Log-domain cross-check of the headline ratio.
    const double log10_stored =
        n * std::log10(3.0) +
        std::log10(0.5) + std::log1p(-std::exp(-n * std::log(3.0))) / std::log(10.0);
    report.log10_ratio = std::log10(front) + n * std::log10(1.5) -
                         std::log10(capacity) +
                         std::log10(report.steps_unrounded) - log10_stored;
    return report;
}

// ---------------------------------------------------------------------------
// Tolerance sweeps and artifact emitters.
// ---------------------------------------------------------------------------

std::vector<CurvePoint> tolerance_curves(const std::vector<int> &widths,
                                         double eps_low, double eps_high,
                                         double eps_step) {
    if (!(eps_step > 0.0)) throw std::domain_error("step must be positive");
    std::vector<CurvePoint> points;
    for (int n : widths) {
        for (int i = 0;; ++i) {
            const double eps = eps_low + i * eps_step;
            if (eps > eps_high + 1e-12) break;
            const FidelityEstimate fid = expected_fidelity(n, eps);
            points.push_back({n, eps, fid.f_e, fid.f_bar});
        }
    }
    return points;
}

namespace {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

}  // namespace

std::string curves_csv(const std::vector<CurvePoint> &points) {
    std::string out = "n,epsilon,f_e,f_bar\n";
    for (const auto &pt : points) {
        out += std::to_string(pt.n);
        out += ',';
        out += format_double(pt.epsilon);
        out += ',';
        out += format_double(pt.f_e);
        out += ',';
        out += format_double(pt.f_bar);
        out += '\n';
    }
    return out;
}

std::string crossovers_json(const CrossoverReport &report) {
    nlohmann::ordered_json j;
    j["epsilon"] = report.epsilon;
    j["f_bar_star"] = report.f_bar_star;
    j["repetitions"] = report.repetitions;
    j["rac_threshold"] = report.rac_threshold;
    j["qrac_threshold"] = report.qrac_threshold;
    j["beats_rac"] = report.beats_rac;
    j["beats_qrac_upper"] = report.beats_qrac_upper;
    j["beats_identity"] = report.beats_identity;
    return j.dump(2) + "\n";
}

std::string mub_table_csv() {
    std::string out = "d,f_dit,f_bit\n";
    for (const auto &row : mub_comparison_table()) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%d,%.4f,%.4f\n", row.d, row.f_dit,
                      row.f_bit);
        out += buf;
    }
    return out;
}

std::string application_json(const ApplicationReport &report) {
    nlohmann::ordered_json j;
    j["n"] = report.n;
    j["target_f"] = report.target_f;
    j["repetitions"] = report.repetitions;
    j["epsilon"] = report.epsilon;
    j["f_bar"] = report.f_bar;
    j["states_continuous"] = report.states_continuous;
    j["steps_unrounded"] = report.steps_unrounded;
    j["steps_rounded"] = report.steps_rounded;
    j["stored_bits"] = report.stored_bits;
    j["ratio"] = report.ratio;
    j["ratio_rounded_steps"] = report.ratio_rounded_steps;
    j["log10_ratio"] = report.log10_ratio;
    return j.dump(2) + "\n";
}

}  // namespace cqrac
