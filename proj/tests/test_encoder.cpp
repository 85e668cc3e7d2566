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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cqrac/contexts.hpp"
#include "cqrac/encoder.hpp"
#include "cqrac/rng.hpp"
#include "cqrac/tableau.hpp"

using namespace cqrac;

namespace {

std::vector<uint8_t> random_bits(size_t m, Rng &rng) {
    std::vector<uint8_t> bits(m);
    for (auto &b : bits) b = static_cast<uint8_t>(rng() & 1);
    return bits;
}

AssignmentChoice random_choice(size_t m, Rng &rng) {
    AssignmentChoice choice;
    choice.bits = random_bits(m, rng);
    return choice;
}

// Score recomputation that shares nothing with the library's table: build
// every preparation setting, deduplicate states by canonical key, and count
// sign mismatches straight from tableau expectations.
int64_t brute_score(const ParityConfiguration &target) {
    const auto n = static_cast<uint32_t>(target.n);
    std::map<std::string, Tableau> distinct;
    for (uint64_t id = 0; id < CircuitParams::count(n); ++id) {
        StabilizerState st = build_state(CircuitParams::from_id(n, id));
        distinct.emplace(st.tab.canonical_key(), st.tab);
    }
    int64_t total = 0;
    for (const auto &[key, tab] : distinct) {
        int dist = 0;
        for (const PauliWord &w : deterministic_set(tab)) {
            const uint64_t idx = w.index();
            if (idx == target.wildcard) continue;
            if (tab.expectation(GeneralPauli::from_word(w)) !=
                target.signs[idx])
                ++dist;
        }
        if (dist == 0)
            total += 100;
        else if (dist == 1)
            total += 10;
        else if (dist == 2)
            total += 1;
    }
    return total;
}

// Restriction count of a two-qubit configuration with the free position
// allowed to take whichever sign satisfies more restrictions.
RestrictionLabel best_label(const ParityConfiguration &target) {
    std::array<int8_t, 9> signs{};
    for (int i = 0; i < 9; ++i) signs[i] = target.signs[static_cast<size_t>(i)];
    const RestrictionLabel one = classify_signs(signs);
    signs[target.wildcard] = static_cast<int8_t>(-signs[target.wildcard]);
    const RestrictionLabel two = classify_signs(signs);
    return one.satisfied >= two.satisfied ? one : two;
}

// Independent oracle for the binary digits of pi/4 via the arctangent
// series pi/4 = 4*atan(1/5) - atan(1/239) in fixed-point integers.
std::vector<uint8_t> machin_pi_quarter_bits(size_t m) {
    using boost::multiprecision::cpp_int;
    const unsigned prec = static_cast<unsigned>(m) + 96;
    const auto atan_inv = [&](unsigned x) {
        const cpp_int scale = cpp_int(1) << prec;
        const cpp_int xx = cpp_int(x) * x;
        cpp_int power = x;
        cpp_int sum = 0;
        for (unsigned k = 0;; ++k) {
            const cpp_int term = scale / (power * (2 * k + 1));
            if (term == 0) break;
            sum += (k % 2 == 0) ? term : -term;
            power *= xx;
        }
        return sum;
    };
    const cpp_int value = 4 * atan_inv(5) - atan_inv(239);
    std::vector<uint8_t> bits(m);
    for (size_t j = 0; j < m; ++j)
        bits[j] = bit_test(value, prec - 1 - static_cast<unsigned>(j)) ? 1 : 0;
    return bits;
}

}  // namespace

TEST_CASE("coupling schemes pair every observable exactly once") {
    for (const int n : {2, 4}) {
        const auto words = static_cast<uint64_t>(word_count(
            static_cast<uint32_t>(n)));
        const CouplingScheme standard = CouplingScheme::standard(n);
        CHECK(standard.bit_count() == (words - 1) / 2);
        CHECK(standard.uncoupled == words - 1);
        for (size_t l = 0; l < standard.couples.size(); ++l) {
            CHECK(standard.couples[l][0] == 2 * l);
            CHECK(standard.couples[l][1] == 2 * l + 1);
        }
        for (const uint64_t seed : {3u, 77u}) {
            const CouplingScheme shuffled = CouplingScheme::shuffled(n, seed);
            std::set<uint64_t> seen;
            for (const auto &couple : shuffled.couples) {
                seen.insert(couple[0]);
                seen.insert(couple[1]);
            }
            seen.insert(shuffled.uncoupled);
            CHECK(seen.size() == words);
            CHECK(*seen.rbegin() == words - 1);
        }
    }
}

TEST_CASE("sign assignments decode back to the encoded data") {
    Rng rng = make_rng(11);
    for (const int n : {2, 4}) {
        const CouplingScheme scheme = CouplingScheme::standard(n);
        for (int trial = 0; trial < 100; ++trial) {
            const auto data = random_bits(scheme.bit_count(), rng);
            const auto choice = random_choice(scheme.bit_count(), rng);
            const ParityConfiguration config =
                apply_choice(scheme, data, choice);
            CHECK(config.decode(scheme) == data);
            const AssignmentChoice back = read_choice(scheme, config);
            CHECK(back.bits == choice.bits);
        }
    }
}

TEST_CASE("distinct data and choices give distinct configurations") {
    const CouplingScheme scheme = CouplingScheme::standard(2);
    std::set<std::string> patterns;
    for (int d = 0; d < 16; ++d) {
        for (int c = 0; c < 16; ++c) {
            std::vector<uint8_t> data{
                static_cast<uint8_t>(d & 1), static_cast<uint8_t>((d >> 1) & 1),
                static_cast<uint8_t>((d >> 2) & 1),
                static_cast<uint8_t>((d >> 3) & 1)};
            AssignmentChoice choice;
            choice.bits = {static_cast<uint8_t>(c & 1),
                           static_cast<uint8_t>((c >> 1) & 1),
                           static_cast<uint8_t>((c >> 2) & 1),
                           static_cast<uint8_t>((c >> 3) & 1)};
            const ParityConfiguration config =
                apply_choice(scheme, data, choice);
            std::string pattern;
            for (const int8_t s : config.signs)
                pattern.push_back(s > 0 ? '+' : '-');
            patterns.insert(pattern);
        }
    }
    CHECK(patterns.size() == 256);
}

TEST_CASE("eigenvalue tables group states by context") {
    const EigenvalueTable &two = EigenvalueTable::instance(2);
    CHECK(two.rows.size() == 24);
    CHECK(two.contexts.size() == 6);
    const EigenvalueTable &four = EigenvalueTable::instance(4);
    CHECK(four.rows.size() == 2592);
    CHECK(four.contexts.size() == 162);
    for (const EigenvalueTable *table : {&two, &four}) {
        const size_t group =
            uint64_t{1} << (static_cast<uint32_t>(table->n) - 1);
        CHECK(table->context_begin.front() == 0);
        CHECK(table->context_begin.back() == table->rows.size());
        for (size_t c = 0; c + 1 < table->context_begin.size(); ++c) {
            CHECK(table->context_begin[c + 1] - table->context_begin[c] ==
                  2 * group);
            for (size_t r = table->context_begin[c];
                 r < table->context_begin[c + 1]; ++r) {
                CHECK(table->rows[r].context == c);
                if (r > table->context_begin[c])
                    CHECK(table->rows[r - 1].params_id <
                          table->rows[r].params_id);
            }
        }
        const size_t per_word = table->n == 2 ? 2 : 18;
        for (const auto &memberships : table->word_contexts)
            CHECK(memberships.size() == per_word);
    }
    CHECK_THROWS_AS(EigenvalueTable::instance(8), std::length_error);
}

TEST_CASE("target scores count states by sign distance") {
    Rng rng = make_rng(5);
    const CouplingScheme scheme = CouplingScheme::standard(2);
    const EigenvalueTable &table = EigenvalueTable::instance(2);
    for (int trial = 0; trial < 20; ++trial) {
        const auto data = random_bits(scheme.bit_count(), rng);
        const auto choice = random_choice(scheme.bit_count(), rng);
        const ParityConfiguration config = apply_choice(scheme, data, choice);
        CHECK(score_target(config, table) == brute_score(config));
    }
}

TEST_CASE("target scores ignore the free position's sign") {
    Rng rng = make_rng(6);
    const CouplingScheme scheme = CouplingScheme::standard(2);
    const EigenvalueTable &table = EigenvalueTable::instance(2);
    for (int trial = 0; trial < 20; ++trial) {
        const auto data = random_bits(scheme.bit_count(), rng);
        const auto choice = random_choice(scheme.bit_count(), rng);
        ParityConfiguration config = apply_choice(scheme, data, choice);
        const int64_t before = score_target(config, table);
        config.signs[config.wildcard] =
            static_cast<int8_t>(-config.signs[config.wildcard]);
        CHECK(score_target(config, table) == before);
    }
}

TEST_CASE("the Bell-basis sign pattern has a distance-zero state") {
    // XX -> +1, YY -> -1, ZZ -> +1 on the context {XX, YY, ZZ}.
    const EigenvalueTable &table = EigenvalueTable::instance(2);
    size_t context = table.contexts.size();
    for (size_t c = 0; c < table.contexts.size(); ++c)
        if (table.contexts[c].members == std::vector<uint64_t>{0, 4, 8})
            context = c;
    REQUIRE(context < table.contexts.size());
    bool found = false;
    for (size_t r = table.context_begin[context];
         r < table.context_begin[context + 1]; ++r)
        found = found || table.rows[r].minus_mask == 0b010;
    CHECK(found);
}

TEST_CASE("hill climbing never scores below a random assignment") {
    const CouplingScheme scheme = CouplingScheme::standard(4);
    const EigenvalueTable &table = EigenvalueTable::instance(4);
    const auto data = pi_quarter_bits(scheme.bit_count());
    Rng rng = make_rng(123);
    const ParityConfiguration random_config =
        apply_choice(scheme, data, random_choice(scheme.bit_count(), rng));
    const ParityConfiguration optimized =
        optimize_target(scheme, data, 20000, rng);
    CHECK(score_target(optimized, table) >=
          score_target(random_config, table));
    CHECK(optimized.decode(scheme) == data);
}

TEST_CASE("optimized targets always decode to their data") {
    Rng rng = make_rng(31);
    const CouplingScheme scheme = CouplingScheme::standard(2);
    for (int trial = 0; trial < 100; ++trial) {
        const auto data = random_bits(scheme.bit_count(), rng);
        const ParityConfiguration config =
            optimize_target(scheme, data, 500, rng);
        CHECK(config.decode(scheme) == data);
    }
}

TEST_CASE("the two-qubit example reaches a five-restriction star") {
    // Data 0010 admits sign assignments satisfying five of the six
    // Magic-Square restrictions (with the free position set favourably),
    // and the stochastic search lands on one of them.
    const CouplingScheme scheme = CouplingScheme::standard(2);
    const std::vector<uint8_t> data{0, 0, 1, 0};
    int best_exhaustive = 0;
    for (int c = 0; c < 16; ++c) {
        AssignmentChoice choice;
        choice.bits = {static_cast<uint8_t>(c & 1),
                       static_cast<uint8_t>((c >> 1) & 1),
                       static_cast<uint8_t>((c >> 2) & 1),
                       static_cast<uint8_t>((c >> 3) & 1)};
        const ParityConfiguration config = apply_choice(scheme, data, choice);
        CHECK(config.decode(scheme) == data);
        best_exhaustive = std::max(best_exhaustive,
                                   best_label(config).satisfied);
    }
    CHECK(best_exhaustive == 5);

    EncodeOptions options;
    options.seed = 7;
    const StateSelection selection = encode(data, 2, options);
    const RestrictionLabel label = best_label(selection.target);
    CHECK(label.satisfied == 5);
    CHECK(label.star);
    CHECK(score_target(selection.target, EigenvalueTable::instance(2)) == 581);
}

TEST_CASE("the two-qubit example is carried by three context eigenstates") {
    // The data 0010 run selects exactly the three states that are
    // simultaneous eigenstates of the three disjoint contexts, realizing
    // every preferred sign at once (free position included).
    EncodeOptions options;
    options.seed = 7;
    const StateSelection selection = encode({0, 0, 1, 0}, 2, options);
    REQUIRE(selection.states.size() == 3);
    CHECK(selection.states[0].id() == 0);
    CHECK(selection.states[1].id() == 3);
    CHECK(selection.states[2].id() == 5);
    CHECK(selection.report.matched == 8);
    CHECK(selection.report.fe == doctest::Approx(1.0));
    CHECK(selection.report.fe_strict == doctest::Approx(1.0));
    CHECK(selection.report.T == 9);
    CHECK(selection.report.nu == doctest::Approx(0.0078125));
    CHECK(selection.report.S == 15);
}

TEST_CASE("a known three-state mixture realizes all nine target signs") {
    // Three disjoint-context eigenstates: the (XX,YY,ZZ) = (+,-,+) state,
    // the (YZ,ZX,XY) = (+,-,+) state and the (ZY,XZ,YX) = (-,+,+) state,
    // against the matching target. Every observable is matched.
    ParityConfiguration target;
    target.n = 2;
    target.wildcard = 8;
    target.signs = {+1, +1, +1, +1, -1, +1, -1, -1, +1};
    std::vector<CircuitParams> states{CircuitParams::from_id(2, 0),
                                      CircuitParams::from_id(2, 3),
                                      CircuitParams::from_id(2, 5)};
    const SelectionReport report = selection_report(2, states, target, 0, 1e4);
    CHECK(report.matched == 8);
    CHECK(report.fe == doctest::Approx(1.0));
    CHECK(target.signs[8] == +1);
    for (uint64_t w = 0; w < 9; ++w) {
        if (w == target.wildcard) continue;
        CHECK(report.p_target[w] > 0.5);
    }
}

TEST_CASE("table-sized selections reach the reference match rates") {
    // Budgeted stochastic runs at the five reference sizes; the fixed-size
    // search must reach the documented match fractions. Seed and budget are
    // pinned: stage one 200000 flips, stage two 2000000 swaps.
    const CouplingScheme scheme = CouplingScheme::standard(4);
    const auto data = pi_quarter_bits(40);
    Rng rng = make_rng(1);
    const ParityConfiguration target =
        optimize_target(scheme, data, 200000, rng);

    const struct {
        int size;
        int need;  // matched observables including the free position, of 81
    } rows[] = {{14, 81}, {9, 75}};
    for (const auto &row : rows) {
        SelectOptions options;
        options.iterations = 2000000;
        options.size_target = row.size;
        Rng search_rng = make_rng(derive_seed(1, static_cast<uint64_t>(row.size)));
        const StateSelection selection =
            select_states(target, options, search_rng);
        CHECK(static_cast<int>(selection.states.size()) == row.size);
        CHECK(selection.report.matched + 1 >= row.need);
    }
}

TEST_CASE("match reports are recomputable and seed-stable") {
    const auto data = pi_quarter_bits(40);
    double fe[2] = {0, 0};
    for (const uint64_t seed : {1u, 2u}) {
        EncodeOptions options;
        options.seed = seed;
        const StateSelection selection = encode(data, 4, options);
        fe[seed - 1] = selection.report.fe;

        ParityConfiguration target = selection.target;
        const SelectionReport recomputed =
            selection_report(4, selection.states, target, 0, 1e4);
        CHECK(recomputed.matched == selection.report.matched);
        CHECK(recomputed.fe == doctest::Approx(selection.report.fe));
        CHECK(recomputed.cost == doctest::Approx(selection.report.cost));
    }
    CHECK(std::abs(fe[0] - fe[1]) <= 3.0 / 81.0 + 1e-12);
}

TEST_CASE("match fractions agree between majority and probability checks") {
    EncodeOptions options;
    options.seed = 1;
    const StateSelection selection = encode(pi_quarter_bits(40), 4, options);

    std::vector<StabilizerState> built;
    std::vector<const Tableau *> tabs;
    for (const CircuitParams &params : selection.states)
        built.push_back(build_state(params));
    for (const StabilizerState &st : built) tabs.push_back(&st.tab);

    int majority_matched = 0;
    int probability_matched = 0;
    for (uint64_t w = 0; w < 81; ++w) {
        if (w == selection.target.wildcard) continue;
        const GeneralPauli obs =
            GeneralPauli::from_word(PauliWord::from_index(4, w));
        const SelectionStats stats = selection_stats(tabs, obs);
        if (stats.majority_sign == selection.target.signs[w])
            ++majority_matched;
        if (selection.report.p_target[w] > 0.5) ++probability_matched;
    }
    CHECK(majority_matched == selection.report.matched);
    CHECK(probability_matched == selection.report.matched);
}

TEST_CASE("selection audits only ever improve") {
    EncodeOptions options;
    options.seed = 9;
    options.select.record_audit = true;
    const StateSelection selection = encode(pi_quarter_bits(40), 4, options);
    REQUIRE(!selection.audit.empty());
    for (size_t i = 1; i < selection.audit.size(); ++i)
        CHECK(selection.audit[i] < selection.audit[i - 1]);
}

TEST_CASE("pi quarter bits match an independent expansion") {
    const std::vector<uint8_t> bits = pi_quarter_bits(64);
    CHECK(bits == machin_pi_quarter_bits(64));
    std::string first40;
    for (size_t i = 0; i < 40; ++i) first40.push_back('0' + bits[i]);
    CHECK(first40 == "1100100100001111110110101010001000100001");
}

TEST_CASE("manifests survive a parse and re-emit byte for byte") {
    EncodeOptions options;
    options.seed = 7;
    const std::vector<uint8_t> data{0, 0, 1, 0};
    const StateSelection selection = encode(data, 2, options);
    const CouplingScheme scheme = CouplingScheme::standard(2);
    const std::string text = manifest_json(selection, scheme, data, 7, 20000);

    const Manifest parsed = parse_manifest(text);
    CHECK(parsed.n == 2);
    CHECK(parsed.seed == 7);
    CHECK(parsed.budget == 20000);
    CHECK(parsed.data == data);
    CHECK(parsed.target.signs == selection.target.signs);
    CHECK(parsed.states.size() == selection.states.size());
    for (size_t i = 0; i < parsed.states.size(); ++i)
        CHECK(parsed.states[i].id() == selection.states[i].id());

    StateSelection rebuilt;
    rebuilt.n = parsed.n;
    rebuilt.target = parsed.target;
    rebuilt.states = parsed.states;
    rebuilt.report = parsed.report;
    CHECK(manifest_json(rebuilt, parsed.scheme, parsed.data, parsed.seed,
                        parsed.budget) == text);
}

TEST_CASE("malformed manifests are rejected") {
    EncodeOptions options;
    options.seed = 7;
    const std::vector<uint8_t> data{0, 0, 1, 0};
    const StateSelection selection = encode(data, 2, options);
    const CouplingScheme scheme = CouplingScheme::standard(2);
    const std::string text = manifest_json(selection, scheme, data, 7, 20000);

    CHECK_THROWS_AS(parse_manifest("not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_manifest("{}"), std::invalid_argument);
    std::string odd_n = text;
    const size_t pos = odd_n.find("\"n\": 2");
    REQUIRE(pos != std::string::npos);
    odd_n.replace(pos, 6, "\"n\": 3");
    CHECK_THROWS_AS(parse_manifest(odd_n), std::invalid_argument);
}
