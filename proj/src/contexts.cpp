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

#include "cqrac/contexts.hpp"

#include <algorithm>
#include <bit>
#include <bitset>
#include <set>

namespace cqrac {

namespace {

/// Designated parity letter for a generator letter: the image of X under the
/// cyclic relabeling X->Y->Z->X that maps Z to the generator letter.
Letter parity_letter_for(Letter generator_letter) {
    switch (generator_letter) {
        case Letter::Z:
            return Letter::X;
        case Letter::X:
            return Letter::Y;
        case Letter::Y:
            return Letter::Z;
    }
    throw std::logic_error("bad letter");
}

/// The two alternatives at a position, designated parity letter first.
std::pair<Letter, Letter> alternatives_for(Letter generator_letter) {
    switch (generator_letter) {
        case Letter::Z:
            return {Letter::X, Letter::Y};
        case Letter::X:
            return {Letter::Y, Letter::Z};
        case Letter::Y:
            return {Letter::Z, Letter::X};
    }
    throw std::logic_error("bad letter");
}

}  // namespace

Context generator_context(const PauliWord &g, Half half) {
    uint32_t n = g.n;
    if (n < 1 || n > 24) {
        throw std::invalid_argument("generator_context: n out of supported range");
    }
    Context ctx;
    ctx.origin = ContextOrigin::Generator;
    ctx.generator = g;
    ctx.half = half;
    ctx.members.reserve((uint64_t{1} << (n - 1)) + 1);
    ctx.members.push_back(g.index());

    std::vector<std::pair<Letter, Letter>> alts(n);
    for (uint32_t q = 0; q < n; q++) {
        alts[q] = alternatives_for(g.letters[q]);
    }
    uint32_t want = half == Half::Even ? 0 : 1;
    PauliWord w;
    w.n = n;
    w.letters.resize(n);
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); mask++) {
        // Bit q set: pick the designated (parity-counted) alternative.
        if ((static_cast<uint32_t>(std::popcount(mask)) & 1) != want) {
            continue;
        }
        for (uint32_t q = 0; q < n; q++) {
            w.letters[q] = ((mask >> q) & 1) ? alts[q].first : alts[q].second;
        }
        ctx.members.push_back(w.index());
    }
    std::sort(ctx.members.begin(), ctx.members.end());
    return ctx;
}

std::vector<Context> generator_contexts(uint32_t n) {
    std::vector<Context> out;
    uint64_t words = word_count(n);
    out.reserve(2 * words);
    for (uint64_t i = 0; i < words; i++) {
        PauliWord g = PauliWord::from_index(n, i);
        out.push_back(generator_context(g, Half::Even));
        out.push_back(generator_context(g, Half::Odd));
    }
    return out;
}

std::vector<Context> generator_catalog(uint32_t n) {
    std::vector<Context> all = generator_contexts(n);
    std::vector<Context> out;
    std::set<std::vector<uint64_t>> seen;
    for (auto &ctx : all) {
        if (seen.insert(ctx.members).second) {
            out.push_back(std::move(ctx));
        }
    }
    return out;
}

std::vector<Context> bipartite_contexts_n4() {
    // The three ways of splitting qubits {1,2,3,4} into two pairs, recorded
    // by the partner of qubit 1. Pair A always holds qubit 1.
    struct Pairing {
        uint32_t a0, a1, b0, b1;  // 0-based qubit positions
    };
    const Pairing pairings[3] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};

    std::vector<Context> two_qubit = generator_catalog(2);
    if (two_qubit.size() != 6) {
        throw std::logic_error("bipartite_contexts_n4: expected 6 two-qubit contexts");
    }

    std::vector<Context> out;
    out.reserve(3 * 6 * 6);
    for (const auto &pr : pairings) {
        for (const auto &ca : two_qubit) {
            for (const auto &cb : two_qubit) {
                Context ctx;
                ctx.origin = ContextOrigin::Bipartite;
                ctx.partner_of_first = pr.a1 + 1;
                ctx.members.reserve(ca.members.size() * cb.members.size());
                for (uint64_t ia : ca.members) {
                    PauliWord wa = PauliWord::from_index(2, ia);
                    for (uint64_t ib : cb.members) {
                        PauliWord wb = PauliWord::from_index(2, ib);
                        PauliWord w;
                        w.n = 4;
                        w.letters.resize(4);
                        w.letters[pr.a0] = wa.letters[0];
                        w.letters[pr.a1] = wa.letters[1];
                        w.letters[pr.b0] = wb.letters[0];
                        w.letters[pr.b1] = wb.letters[1];
                        ctx.members.push_back(w.index());
                    }
                }
                std::sort(ctx.members.begin(), ctx.members.end());
                out.push_back(std::move(ctx));
            }
        }
    }
    return out;
}

std::vector<Context> all_contexts(uint32_t n) {
    if (n < 2) {
        throw std::invalid_argument("all_contexts: n must be at least 2");
    }
    std::vector<Context> out = generator_catalog(n);
    if (n == 4) {
        auto bip = bipartite_contexts_n4();
        out.insert(out.end(), bip.begin(), bip.end());
        std::set<std::vector<uint64_t>> seen;
        for (const auto &ctx : out) {
            if (!seen.insert(ctx.members).second) {
                throw std::logic_error("all_contexts: duplicate context in n=4 catalog");
            }
        }
    }
    return out;
}

namespace {

using Bits = std::bitset<96>;

void bron_kerbosch(const std::vector<Bits> &adj,
                   Bits r,
                   Bits p,
                   Bits x,
                   uint32_t count,
                   std::vector<std::vector<uint64_t>> &out) {
    if (p.none() && x.none()) {
        std::vector<uint64_t> clique;
        for (uint32_t v = 0; v < count; v++) {
            if (r.test(v)) {
                clique.push_back(v);
            }
        }
        out.push_back(std::move(clique));
        return;
    }
    // Pivot: vertex of P union X with the most neighbours in P.
    uint32_t pivot = 0;
    size_t best = 0;
    bool have = false;
    for (uint32_t v = 0; v < count; v++) {
        if (p.test(v) || x.test(v)) {
            size_t deg = (adj[v] & p).count();
            if (!have || deg > best) {
                have = true;
                best = deg;
                pivot = v;
            }
        }
    }
    Bits candidates = p & ~adj[pivot];
    for (uint32_t v = 0; v < count; v++) {
        if (!candidates.test(v)) {
            continue;
        }
        Bits rv = r;
        rv.set(v);
        bron_kerbosch(adj, rv, p & adj[v], x & adj[v], count, out);
        p.reset(v);
        x.set(v);
    }
}

}  // namespace

std::vector<std::vector<uint64_t>> maximal_commuting_cliques(uint32_t n) {
    if (n < 2 || n > 4) {
        throw std::invalid_argument("maximal_commuting_cliques: supported for n in [2, 4]");
    }
    uint32_t count = static_cast<uint32_t>(word_count(n));
    std::vector<PauliWord> words;
    words.reserve(count);
    for (uint32_t i = 0; i < count; i++) {
        words.push_back(PauliWord::from_index(n, i));
    }
    std::vector<Bits> adj(count);
    for (uint32_t a = 0; a < count; a++) {
        for (uint32_t b = a + 1; b < count; b++) {
            if (words[a].commutes_with(words[b])) {
                adj[a].set(b);
                adj[b].set(a);
            }
        }
    }
    Bits p;
    for (uint32_t v = 0; v < count; v++) {
        p.set(v);
    }
    std::vector<std::vector<uint64_t>> out;
    bron_kerbosch(adj, Bits{}, p, Bits{}, count, out);
    for (auto &clique : out) {
        std::sort(clique.begin(), clique.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

const MagicSquare &MagicSquare::canonical() {
    static const MagicSquare square = [] {
        auto idx = [](const char *s) { return PauliWord::from_string(s).index(); };
        MagicSquare m;
        m.rows = {{
            {idx("XX"), idx("YY"), idx("ZZ")},
            {idx("YZ"), idx("ZX"), idx("XY")},
            {idx("ZY"), idx("XZ"), idx("YX")},
        }};
        return m;
    }();
    return square;
}

namespace {

int line_product_sign(const std::array<uint64_t, 3> &line) {
    GeneralPauli prod = GeneralPauli::identity(2);
    for (uint64_t idx : line) {
        prod.mul_inplace(GeneralPauli::from_word(PauliWord::from_index(2, idx)));
    }
    if (!prod.is_identity_mask()) {
        throw std::logic_error("magic square line does not multiply to identity");
    }
    return prod.sign();
}

}  // namespace

int MagicSquare::row_product_sign(int r) const {
    return line_product_sign(row(r));
}

int MagicSquare::col_product_sign(int c) const {
    return line_product_sign(col(c));
}

RestrictionLabel classify_signs(const std::array<int8_t, 9> &signs) {
    const MagicSquare &m = MagicSquare::canonical();
    RestrictionLabel label;
    int rows_ok = 0;
    int cols_ok = 0;
    for (int r = 0; r < 3; r++) {
        int prod = 1;
        for (uint64_t idx : m.row(r)) {
            prod *= signs[idx];
        }
        rows_ok += prod == m.row_product_sign(r);
    }
    for (int c = 0; c < 3; c++) {
        int prod = 1;
        for (uint64_t idx : m.col(c)) {
            prod *= signs[idx];
        }
        cols_ok += prod == m.col_product_sign(c);
    }
    label.satisfied = rows_ok + cols_ok;
    label.star = rows_ok == 3 || cols_ok == 3;
    return label;
}

}  // namespace cqrac
