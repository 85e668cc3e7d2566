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

#include <map>
#include <set>

#include "cqrac/contexts.hpp"

using namespace cqrac;

namespace {

std::set<std::vector<uint64_t>> member_sets(const std::vector<Context> &cs) {
    std::set<std::vector<uint64_t>> out;
    for (const auto &c : cs) {
        out.insert(c.members);
    }
    return out;
}

bool mutually_commuting(uint32_t n, const std::vector<uint64_t> &members) {
    for (size_t a = 0; a < members.size(); a++) {
        for (size_t b = a + 1; b < members.size(); b++) {
            if (!PauliWord::from_index(n, members[a])
                     .commutes_with(PauliWord::from_index(n, members[b]))) {
                return false;
            }
        }
    }
    return true;
}

/// Positions where two words share the same letter.
uint32_t shared_positions(const PauliWord &a, const PauliWord &b) {
    uint32_t s = 0;
    for (uint32_t q = 0; q < a.n; q++) {
        s += a.letters[q] == b.letters[q];
    }
    return s;
}

}  // namespace

TEST_CASE("generator context for the all-Z generator") {
    auto ctx = generator_context(PauliWord::from_string("ZZZZ"), Half::Even);
    std::vector<std::string> names;
    for (uint64_t idx : ctx.members) {
        names.push_back(PauliWord::from_index(4, idx).str());
    }
    std::vector<std::string> expected = {"XXXX", "XXYY", "XYXY", "XYYX", "YXXY",
                                         "YXYX", "YYXX", "YYYY", "ZZZZ"};
    std::sort(names.begin(), names.end());
    CHECK(names == expected);
    CHECK(ctx.members.size() == 9);
    CHECK(mutually_commuting(4, ctx.members));
}

TEST_CASE("generator contexts for arbitrary generators commute and have the right size") {
    for (const char *gen : {"XYZX", "YYYY", "ZXYZ", "XXXX"}) {
        for (Half h : {Half::Even, Half::Odd}) {
            auto ctx = generator_context(PauliWord::from_string(gen), h);
            CHECK(ctx.members.size() == 9);
            CHECK(mutually_commuting(4, ctx.members));
            // Exactly one member (the generator) shares no letter position
            // with any other member.
            uint32_t isolated = 0;
            for (uint64_t a : ctx.members) {
                bool shares = false;
                for (uint64_t b : ctx.members) {
                    if (a != b &&
                        shared_positions(PauliWord::from_index(4, a), PauliWord::from_index(4, b)) >
                            0) {
                        shares = true;
                        break;
                    }
                }
                isolated += !shares;
            }
            CHECK(isolated == 1);
        }
    }
}

TEST_CASE("n=2 catalog is the six contexts found by exhaustive clique search") {
    auto catalog = generator_catalog(2);
    CHECK(catalog.size() == 6);

    auto cliques = maximal_commuting_cliques(2);
    CHECK(cliques.size() == 6);
    for (const auto &c : cliques) {
        CHECK(c.size() == 3);
    }

    std::set<std::vector<uint64_t>> clique_sets(cliques.begin(), cliques.end());
    CHECK(member_sets(catalog) == clique_sets);

    // Each word sits in exactly two contexts.
    std::map<uint64_t, int> incidence;
    for (const auto &ctx : catalog) {
        for (uint64_t m : ctx.members) {
            incidence[m]++;
        }
    }
    CHECK(incidence.size() == 9);
    for (const auto &[idx, cnt] : incidence) {
        CHECK(cnt == 2);
    }
}

TEST_CASE("n=4 catalog: 162 generator + 108 bipartite = 270, matching clique search") {
    auto catalog = all_contexts(4);
    CHECK(catalog.size() == 270);
    size_t generator_count = 0;
    size_t bipartite_count = 0;
    for (const auto &ctx : catalog) {
        CHECK(ctx.members.size() == 9);
        if (ctx.origin == ContextOrigin::Generator) {
            generator_count++;
        } else {
            bipartite_count++;
        }
    }
    CHECK(generator_count == 162);
    CHECK(bipartite_count == 108);
    CHECK(member_sets(catalog).size() == 270);

    auto cliques = maximal_commuting_cliques(4);
    // Every maximal commuting set of full-weight 4-qubit words has size 9 and
    // the catalog reproduces them exactly.
    CHECK(cliques.size() == 270);
    for (const auto &c : cliques) {
        CHECK(c.size() == 9);
    }
    CHECK(member_sets(catalog) == std::set<std::vector<uint64_t>>(cliques.begin(), cliques.end()));
}

TEST_CASE("n=6 catalog: 2 * 3^6 distinct contexts of size 33") {
    auto catalog = all_contexts(6);
    CHECK(catalog.size() == 2 * 729);
    CHECK(member_sets(catalog).size() == 2 * 729);
    uint64_t memberships = 0;
    for (const auto &ctx : catalog) {
        REQUIRE(ctx.members.size() == 33);
        memberships += ctx.members.size();
    }
    CHECK(memberships == 2ull * 729 * 33);

    // Spot-check commutation on a sample of the catalog.
    for (size_t k = 0; k < catalog.size(); k += 97) {
        CHECK(mutually_commuting(6, catalog[k].members));
    }

    // Each word is the generator of exactly two contexts.
    std::map<uint64_t, int> as_generator;
    for (const auto &ctx : catalog) {
        REQUIRE(ctx.generator.has_value());
        as_generator[ctx.generator->index()]++;
    }
    CHECK(as_generator.size() == 729);
    for (const auto &[idx, cnt] : as_generator) {
        CHECK(cnt == 2);
    }
}

TEST_CASE("magic square rows multiply to -1 and columns to +1") {
    const auto &m = MagicSquare::canonical();
    for (int r = 0; r < 3; r++) {
        CHECK(m.row_product_sign(r) == -1);
    }
    for (int c = 0; c < 3; c++) {
        CHECK(m.col_product_sign(c) == +1);
    }

    // Rows and columns together are exactly the six 2-qubit contexts.
    std::set<std::vector<uint64_t>> lines;
    for (int r = 0; r < 3; r++) {
        auto row = m.row(r);
        std::vector<uint64_t> v(row.begin(), row.end());
        std::sort(v.begin(), v.end());
        lines.insert(v);
    }
    for (int c = 0; c < 3; c++) {
        auto col = m.col(c);
        std::vector<uint64_t> v(col.begin(), col.end());
        std::sort(v.begin(), v.end());
        lines.insert(v);
    }
    CHECK(lines == member_sets(generator_catalog(2)));
}

TEST_CASE("no sign assignment satisfies all six restrictions; five is attainable") {
    int best = 0;
    int count_at_best = 0;
    int odd_totals = 0;
    for (uint32_t bits = 0; bits < 512; bits++) {
        std::array<int8_t, 9> signs;
        for (int k = 0; k < 9; k++) {
            signs[k] = (bits >> k) & 1 ? int8_t{1} : int8_t{-1};
        }
        auto label = classify_signs(signs);
        CHECK(label.satisfied <= 5);
        // Star implies a full line bundle, so five restrictions always star.
        if (label.satisfied == 5) {
            CHECK(label.star);
        }
        odd_totals += label.satisfied % 2 == 1;
        if (label.satisfied > best) {
            best = label.satisfied;
            count_at_best = 0;
        }
        if (label.satisfied == best) {
            count_at_best++;
        }
    }
    CHECK(best == 5);
    CHECK(count_at_best == 96);
    // Row/column parity forces an odd satisfied count for every assignment.
    CHECK(odd_totals == 512);
}
