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

// End-to-end acceptance gate: nine criteria, one pass/fail line each, with
// every tolerance pinned in this file. Exit status is the number of failed
// criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "cqrac/analysis.hpp"
#include "cqrac/contexts.hpp"
#include "cqrac/dense.hpp"
#include "cqrac/encoder.hpp"
#include "cqrac/pauli.hpp"
#include "cqrac/retrieval.hpp"
#include "cqrac/sweep2q.hpp"
#include "cqrac/tableau.hpp"

namespace {

using cqrac::PauliWord;

// ---------------------------------------------------------------------------
// Pinned tolerances and budgets.
// ---------------------------------------------------------------------------
constexpr double kCapacityInverseTol = 0.001;    // 1/g(0.048) vs 1.385
constexpr double kMeanVotersTol = 0.001;         // <N_O> vs 0.6925
constexpr double kPerBitSuccessTol = 0.0005;     // f_bar vs 0.5983
constexpr double kOptimalToleranceTol = 0.0034;  // eps* vs 0.0480
constexpr double kRateConstantTol = 0.2;         // vs 49.7
constexpr double kExactRacTol = 1e-12;           // vs 3/4 at load 3
constexpr double kApplicationRelTol = 0.05;      // storage ratios vs cited
constexpr double kDigitCodeTol = 5e-5;           // four-decimal agreement
constexpr int64_t kStageOneBudget = 200000;      // documented search budgets
constexpr int64_t kStageTwoBudget = 2000000;
constexpr uint64_t kMaxSeeds = 10;
constexpr uint64_t kMonteCarloTrials = 100000;
constexpr uint64_t kSweepSamples = 100000;
constexpr uint64_t kSweepSeed = 2026;

struct Ledger {
    int failed = 0;
    std::vector<std::string> notes;

    void note(const char *fmt, ...) {
        char buf[512];
        va_list args;
        va_start(args, fmt);
        std::vsnprintf(buf, sizeof buf, fmt, args);
        va_end(args);
        notes.push_back(buf);
    }

    bool require(bool ok, const char *fmt, ...) {
        if (!ok) {
            char buf[512];
            va_list args;
            va_start(args, fmt);
            std::vsnprintf(buf, sizeof buf, fmt, args);
            va_end(args);
            notes.push_back(std::string("FAILED: ") + buf);
        }
        return ok;
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

// Shared artifact: the reference-size selections found by criterion 3,
// reused by criterion 7 for the end-to-end error comparison.
cqrac::StateSelection g_size9_selection;
bool g_size9_available = false;

// ---------------------------------------------------------------------------
// Criterion 1: commuting-family counts and clique cross-check.
// ---------------------------------------------------------------------------
bool criterion1(Ledger &led) {
    bool ok = true;
    const struct {
        int n;
        size_t families;
        size_t members;
    } expected[] = {{2, 6, 3}, {4, 270, 9}, {6, 1458, 33}};
    for (const auto &row : expected) {
        const auto catalog = cqrac::all_contexts(static_cast<uint32_t>(row.n));
        ok &= led.require(catalog.size() == row.families,
                          "n=%d family count %zu != %zu", row.n,
                          catalog.size(), row.families);
        for (const auto &ctx : catalog)
            if (ctx.members.size() != row.members) {
                ok &= led.require(false, "n=%d family size %zu != %zu", row.n,
                                  ctx.members.size(), row.members);
                break;
            }
    }
    for (int n : {2, 4}) {
        const auto catalog = cqrac::all_contexts(static_cast<uint32_t>(n));
        auto cliques = cqrac::maximal_commuting_cliques(static_cast<uint32_t>(n));
        std::vector<std::vector<uint64_t>> families;
        families.reserve(catalog.size());
        for (const auto &ctx : catalog) families.push_back(ctx.members);
        std::sort(families.begin(), families.end());
        families.erase(std::unique(families.begin(), families.end()),
                       families.end());
        std::sort(cliques.begin(), cliques.end());
        ok &= led.require(families == cliques,
                          "n=%d clique oracle disagrees with the catalog", n);
    }
    return ok;
}

// ---------------------------------------------------------------------------
// Criterion 2: every preparation setting yields a distinct eigenstate that is
// deterministic on exactly one family and unbiased elsewhere, with the dense
// statevector oracle agreeing on all 81 expectations.
// ---------------------------------------------------------------------------
bool criterion2(Ledger &led) {
    bool ok = true;
    const uint64_t settings = cqrac::CircuitParams::count(4);
    ok &= led.require(settings == 2592, "setting count %llu != 2592",
                      static_cast<unsigned long long>(settings));

    const auto catalog = cqrac::all_contexts(4);
    std::set<std::vector<uint64_t>> family_sets;
    for (const auto &ctx : catalog) {
        auto members = ctx.members;
        std::sort(members.begin(), members.end());
        family_sets.insert(members);
    }

    std::set<std::string> distinct;
    uint64_t discrepancies = 0;
    for (uint64_t id = 0; id < settings; ++id) {
        const auto params = cqrac::CircuitParams::from_id(4, id);
        const cqrac::StabilizerState state = cqrac::build_state(params);
        const cqrac::dense::cvec psi = cqrac::dense::build_state_vector(params);
        distinct.insert(state.tab.canonical_key());

        std::vector<uint64_t> deterministic;
        for (uint64_t w = 0; w < 81; ++w) {
            const auto pauli = cqrac::GeneralPauli::from_word(
                PauliWord::from_index(4, w));
            const int dense_verdict = cqrac::dense::verdict(psi, pauli);
            const int tableau_verdict = state.tab.expectation(pauli);
            if (dense_verdict != tableau_verdict) ++discrepancies;
            if (dense_verdict != 0) deterministic.push_back(w);
        }
        if (deterministic.size() != 9 ||
            family_sets.find(deterministic) == family_sets.end())
            ++discrepancies;
    }
    ok &= led.require(distinct.size() == settings,
                      "only %zu distinct states out of %llu", distinct.size(),
                      static_cast<unsigned long long>(settings));
    ok &= led.require(discrepancies == 0,
                      "%llu oracle discrepancies (expected zero)",
                      static_cast<unsigned long long>(discrepancies));
    led.note("2592 settings, %zu distinct states, 0 oracle discrepancies",
             distinct.size());
    return ok;
}

// ---------------------------------------------------------------------------
// Criterion 3: the five reference selection sizes reach their documented
// match fractions within the seed budget, and the step/noise/sample
// bookkeeping derived from each (size, fraction) pair is exact.
// ---------------------------------------------------------------------------
bool criterion3(Ledger &led) {
    bool ok = true;
    const struct {
        int size;
        int need;  // matched observables including the free position, of 81
        int T;
        double nu;
        int64_t S;
    } rows[] = {{9, 75, 11, 0.0078125, 35},
                {11, 76, 12, 0.00477430, 44},
                {12, 78, 13, 0.00260417, 49},
                {13, 80, 14, 0.00141059, 55},
                {14, 81, 14, 0.00151910, 59}};

    // Deterministic bookkeeping first: exact integer steps/samples, noise to
    // the table's printed precision.
    for (const auto &row : rows) {
        const auto plan = cqrac::plan_from_fe(4, row.size, row.need / 81.0);
        ok &= led.require(plan.T == row.T, "size %d: T %d != %d", row.size,
                          plan.T, row.T);
        ok &= led.require(std::abs(plan.nu - row.nu) <= 1e-6 * (1.0 + row.nu),
                          "size %d: nu %.8f != %.8f", row.size, plan.nu,
                          row.nu);
        ok &= led.require(plan.S == row.S, "size %d: S %lld != %lld", row.size,
                          static_cast<long long>(plan.S),
                          static_cast<long long>(row.S));
        ok &= led.require(std::abs(plan.NO - row.size / 9.0) <= 1e-12,
                          "size %d: N_O %.6f != %.6f", row.size, plan.NO,
                          row.size / 9.0);
    }

    // Stochastic part: full encode pipeline at the documented budgets, up to
    // kMaxSeeds attempts per size, early exit on success.
    const auto data = cqrac::pi_quarter_bits(40);
    for (const auto &row : rows) {
        bool reached = false;
        for (uint64_t seed = 1; seed <= kMaxSeeds && !reached; ++seed) {
            const auto start = std::chrono::steady_clock::now();
            cqrac::EncodeOptions options;
            options.seed = seed;
            options.stage1_iterations = kStageOneBudget;
            options.select.iterations = kStageTwoBudget;
            options.select.size_target = row.size;
            const cqrac::StateSelection selection =
                cqrac::encode(data, 4, options);
            const int matched = selection.report.matched + 1;
            if (matched >= row.need) {
                reached = true;
                led.note("size %d: %d/81 at seed %llu (%.1fs)", row.size,
                         matched, static_cast<unsigned long long>(seed),
                         seconds_since(start));
                if (row.size == 9) {
                    g_size9_selection = selection;
                    g_size9_available = true;
                }
            }
        }
        ok &= led.require(reached, "size %d never reached %d/81 in %llu seeds",
                          row.size, row.need,
                          static_cast<unsigned long long>(kMaxSeeds));
    }
    return ok;
}

// ---------------------------------------------------------------------------
// Criterion 4: closed-form battery.
// ---------------------------------------------------------------------------
bool criterion4(Ledger &led) {
    bool ok = true;
    const double inv_capacity = 1.0 / cqrac::tolerance_capacity(0.048);
    ok &= led.require(std::abs(inv_capacity - 1.385) <= kCapacityInverseTol,
                      "1/g(0.048) = %.6f not within %.3f of 1.385",
                      inv_capacity, kCapacityInverseTol);

    for (int n : {16, 18, 20}) {
        const auto fid = cqrac::expected_fidelity(n, 0.048);
        ok &= led.require(
            std::abs(fid.mean_deterministic - 0.6925) <= kMeanVotersTol,
            "n=%d <N_O> = %.6f not within %.4f of 0.6925", n,
            fid.mean_deterministic, kMeanVotersTol);
        ok &= led.require(std::abs(fid.f_bar - 0.5983) <= kPerBitSuccessTol,
                          "n=%d f_bar = %.6f not within %.4f of 0.5983", n,
                          fid.f_bar, kPerBitSuccessTol);
    }

    const auto opt = cqrac::optimal_tolerance(16, 0.999);
    ok &= led.require(std::abs(opt.epsilon - 0.0480) <= kOptimalToleranceTol,
                      "eps* = %.6f not within %.4f of 0.0480", opt.epsilon,
                      kOptimalToleranceTol);

    const double rate = cqrac::repetition_rate_constant(0.5983);
    ok &= led.require(std::abs(rate - 49.7) <= kRateConstantTol,
                      "rate constant %.4f not within %.2f of 49.7", rate,
                      kRateConstantTol);

    const double amplified = cqrac::amplified_success(0.5983, 243);
    ok &= led.require(amplified >= 0.999,
                      "243 repetitions reach only %.6f < 0.999", amplified);

    const double rac3 = cqrac::rac_success_exact(3);
    ok &= led.require(std::abs(rac3 - 0.75) <= kExactRacTol,
                      "exact classical value at load 3 is %.12f", rac3);
    led.note("1/g=%.6f eps*=%.6f rate=%.4f F(243)=%.6f", inv_capacity,
             opt.epsilon, rate, amplified);
    return ok;
}

// ---------------------------------------------------------------------------
// Criterion 5: break-even widths from first principles.
// ---------------------------------------------------------------------------
bool criterion5(Ledger &led) {
    const auto report = cqrac::crossover_report(0.999);
    bool ok = true;
    ok &= led.require(report.beats_rac == 14, "vs classical code: %d != 14",
                      report.beats_rac);
    ok &= led.require(report.beats_qrac_upper == 16,
                      "vs quantum upper bound: %d != 16",
                      report.beats_qrac_upper);
    ok &= led.require(report.beats_identity == 18,
                      "amplified compression: %d != 18",
                      report.beats_identity);
    led.note("crossovers {%d, %d, %d} at eps=%.6f, %lld repetitions",
             report.beats_rac, report.beats_qrac_upper, report.beats_identity,
             report.epsilon, static_cast<long long>(report.repetitions));
    return ok;
}

// ---------------------------------------------------------------------------
// Criterion 6: large-width storage ratios in extended precision.
// ---------------------------------------------------------------------------
bool criterion6(Ledger &led) {
    bool ok = true;
    const struct {
        int n;
        double cited;
    } cases[] = {{44, 5.75e-8}, {100, 3.52e-24}};
    for (const auto &c : cases) {
        const auto report = cqrac::application_report(c.n, 0.999);
        const double rel = report.ratio / c.cited - 1.0;
        ok &= led.require(std::abs(rel) <= kApplicationRelTol,
                          "n=%d ratio %.6e is %+.2f%% from %.2e", c.n,
                          report.ratio, 100.0 * rel, c.cited);
        led.note("n=%d: ratio %.6e (%+.2f%% of cited)", c.n, report.ratio,
                 100.0 * rel);
    }
    return ok;
}

// ---------------------------------------------------------------------------
// Criterion 7: Monte-Carlo retrieval properties.
// ---------------------------------------------------------------------------
bool criterion7(Ledger &led) {
    bool ok = true;
    cqrac::Rng rng = cqrac::make_rng(424242);

    // (a) A state unbiased on the queried observable survives the T-step
    // filter with probability exactly 2^-(T-1).
    {
        const std::vector<cqrac::StabilizerState> one = {
            cqrac::build_state(cqrac::CircuitParams::from_id(2, 0))};
        const PauliWord query = PauliWord::from_string("XY");
        const int T = 4;
        uint64_t survived = 0;
        for (uint64_t t = 0; t < kMonteCarloTrials; ++t)
            survived += static_cast<uint64_t>(
                cqrac::retrieve_parity(one, query, T, rng).survivors);
        const double p_hat =
            static_cast<double>(survived) / static_cast<double>(kMonteCarloTrials);
        const double p = std::exp2(1 - T);
        const double sigma =
            std::sqrt(p * (1.0 - p) / static_cast<double>(kMonteCarloTrials));
        ok &= led.require(std::abs(p_hat - p) <= 5.0 * sigma,
                          "survivor rate %.5f vs %.5f (5 sigma = %.5f)", p_hat,
                          p, 5.0 * sigma);
        led.note("unbiased survivor rate %.5f vs %.5f (sigma %.5f)", p_hat, p,
                 sigma);
    }

    // (b) A state deterministic on the queried observable is never discarded
    // and always votes its stored sign.
    {
        const std::vector<cqrac::StabilizerState> one = {
            cqrac::build_state(cqrac::CircuitParams::from_id(2, 0))};
        const PauliWord query = PauliWord::from_string("XX");
        const int expected_sign = one[0].tab.expectation(
            cqrac::GeneralPauli::from_word(query));
        uint64_t kept = 0;
        for (uint64_t t = 0; t < kMonteCarloTrials; ++t) {
            const auto outcome = cqrac::retrieve_parity(one, query, 6, rng);
            kept += static_cast<uint64_t>(outcome.survivors == 1 &&
                                          outcome.parity == expected_sign);
        }
        ok &= led.require(kept == kMonteCarloTrials,
                          "deterministic state discarded in %llu trials",
                          static_cast<unsigned long long>(kMonteCarloTrials -
                                                          kept));
    }

    // (c) End-to-end bit error matches the selection's own majority decode
    // within Monte-Carlo statistics once the residual noise target is met.
    if (!led.require(g_size9_available,
                     "no reference selection available from criterion 3"))
        return false;
    {
        const cqrac::StateSelection &sel = g_size9_selection;
        cqrac::Manifest manifest;
        manifest.n = 4;
        manifest.data = cqrac::pi_quarter_bits(40);
        manifest.scheme = cqrac::CouplingScheme::standard(4);
        manifest.target = sel.target;
        manifest.states = sel.states;
        manifest.report = sel.report;

        std::vector<cqrac::StabilizerState> states;
        for (const auto &params : sel.states)
            states.push_back(cqrac::build_state(params));
        std::vector<const cqrac::Tableau *> tabs;
        for (const auto &s : states) tabs.push_back(&s.tab);

        // Exact expectation of the retrieval decode at long filter depth:
        // per-observable deterministic majorities, fair coins on exact ties,
        // guaranteed misses where no deterministic voter exists.
        const int T = sel.report.T + 10;
        const double residual =
            (static_cast<double>(sel.states.size()) - sel.report.NO) *
            std::exp2(1 - T);
        const double fe_eff = 1.0 - std::pow(3.0, -4);
        ok &= led.require(residual <= (1.0 - fe_eff) / 10.0 + 1e-12,
                          "residual %.6f exceeds the noise budget %.6f",
                          residual, (1.0 - fe_eff) / 10.0);

        double expected_error = 0.0;
        for (size_t l = 0; l < manifest.scheme.bit_count(); ++l) {
            int sign[2] = {0, 0};
            bool coin[2] = {false, false};
            bool dead[2] = {false, false};
            for (int side = 0; side < 2; ++side) {
                const auto word = PauliWord::from_index(
                    4, manifest.scheme.couples[l][static_cast<size_t>(side)]);
                const auto stats = cqrac::selection_stats(
                    tabs, cqrac::GeneralPauli::from_word(word));
                if (stats.plus + stats.minus == 0)
                    dead[side] = true;
                else if (stats.plus == stats.minus)
                    coin[side] = true;
                else
                    sign[side] = stats.plus > stats.minus ? +1 : -1;
            }
            const uint8_t bit = manifest.data[l];
            if (dead[0] || dead[1])
                expected_error += 1.0;  // unresolved parity: bit is lost
            else if (coin[0] || coin[1])
                expected_error += 0.5;
            else
                expected_error += ((sign[0] != sign[1]) != (bit == 1)) ? 1.0 : 0.0;
        }
        expected_error /= static_cast<double>(manifest.scheme.bit_count());

        uint64_t wrong = 0;
        for (uint64_t t = 0; t < kMonteCarloTrials; ++t) {
            const size_t l =
                static_cast<size_t>(t % manifest.scheme.bit_count());
            const auto outcome = cqrac::retrieve_bit(manifest, l, T, rng);
            wrong += static_cast<uint64_t>(
                outcome.bit != static_cast<int>(manifest.data[l]));
        }
        const double observed =
            static_cast<double>(wrong) / static_cast<double>(kMonteCarloTrials);
        const double sigma = std::sqrt(
            std::max(expected_error * (1.0 - expected_error), 1e-12) /
            static_cast<double>(kMonteCarloTrials));
        ok &= led.require(std::abs(observed - expected_error) <= 3.0 * sigma,
                          "bit error %.5f vs %.5f (3 sigma = %.5f)", observed,
                          expected_error, 3.0 * sigma);
        led.note("bit error %.5f vs predicted %.5f (sigma %.5f, T=%d)",
                 observed, expected_error, sigma, T);
    }
    return ok;
}

// ---------------------------------------------------------------------------
// Criterion 8: qualitative clustering of the two-qubit sweep.
// ---------------------------------------------------------------------------
bool criterion8(Ledger &led) {
    bool ok = true;
    const cqrac::SweepResult result =
        cqrac::sweep_2q(kSweepSamples, kSweepSeed, 0);

    std::vector<cqrac::SweepRow> occurred;
    for (const auto &row : result.rows) {
        ok &= led.require(row.restrictions <= 5,
                          "configuration %d satisfies %d restrictions",
                          row.config_id, row.restrictions);
        if (row.occurrences > 0) occurred.push_back(row);
    }
    const size_t decile = (occurred.size() + 9) / 10;

    std::sort(occurred.begin(), occurred.end(),
              [](const cqrac::SweepRow &a, const cqrac::SweepRow &b) {
                  return a.min_avg_smix < b.min_avg_smix;
              });
    for (size_t i = 0; i < decile; ++i)
        if (!(occurred[i].restrictions == 5 && occurred[i].star)) {
            ok &= led.require(false,
                              "cheapest decile holds a %d-restriction row",
                              occurred[i].restrictions);
            break;
        }

    std::sort(occurred.begin(), occurred.end(),
              [](const cqrac::SweepRow &a, const cqrac::SweepRow &b) {
                  return a.occurrences > b.occurrences;
              });
    size_t five_star_top = 0;
    for (size_t i = 0; i < decile; ++i) {
        if (!occurred[i].star) {
            ok &= led.require(false, "most-common decile holds an unstarred row");
            break;
        }
        if (occurred[i].restrictions == 5) ++five_star_top;
    }
    ok &= led.require(five_star_top > 0,
                      "no five-restriction row in the most-common decile");
    led.note("%zu configurations occurred; decile %zu; %zu five-star rows on top",
             occurred.size(), decile, five_star_top);
    return ok;
}

// ---------------------------------------------------------------------------
// Criterion 9: digit-code comparison column to four decimals.
// ---------------------------------------------------------------------------
bool criterion9(Ledger &led) {
    const double expected[] = {0.7890, 0.7524, 0.7365, 0.7224, 0.7031, 0.6960};
    const auto rows = cqrac::mub_comparison_table();
    bool ok = led.require(rows.size() == 6, "table has %zu rows", rows.size());
    for (size_t i = 0; ok && i < rows.size(); ++i)
        ok &= led.require(std::abs(rows[i].f_bit - expected[i]) <= kDigitCodeTol,
                          "d=%d: f_bit %.6f != %.4f", rows[i].d, rows[i].f_bit,
                          expected[i]);
    return ok;
}

struct Entry {
    int id;
    const char *title;
    bool (*run)(Ledger &);
};

}  // namespace

int main() {
    const Entry entries[] = {
        {1, "commuting-family counts and clique cross-check", criterion1},
        {2, "distinct eigenstates, one family each, dense-oracle agreement",
         criterion2},
        {3, "reference selection sizes with exact plan bookkeeping",
         criterion3},
        {4, "closed-form battery", criterion4},
        {5, "break-even widths {14, 16, 18}", criterion5},
        {6, "large-width storage ratios", criterion6},
        {7, "Monte-Carlo retrieval properties", criterion7},
        {8, "two-qubit sweep clustering", criterion8},
        {9, "digit-code comparison to four decimals", criterion9},
    };

    const auto suite_start = std::chrono::steady_clock::now();
    int failures = 0;
    for (const Entry &entry : entries) {
        Ledger led;
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = entry.run(led);
        } catch (const std::exception &e) {
            led.note("FAILED: unhandled exception: %s", e.what());
        }
        std::printf("criterion %d: %s (%.1fs) %s\n", entry.id,
                    ok ? "PASS" : "FAIL", seconds_since(start), entry.title);
        for (const auto &note : led.notes)
            std::printf("    %s\n", note.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    std::printf("acceptance: %d/9 criteria passed (total %.1fs)\n",
                9 - failures, seconds_since(suite_start));
    return failures;
}
