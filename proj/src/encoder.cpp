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

#include "cqrac/encoder.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "cqrac/retrieval.hpp"
#include "cqrac/sampling.hpp"
#include "cqrac/tableau.hpp"

namespace cqrac {

namespace {

void check_even_n(int n) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("n must be even and at least 2");
}

}  // namespace

CouplingScheme CouplingScheme::standard(int n) {
    check_even_n(n);
    const uint64_t words = word_count(static_cast<uint32_t>(n));
    CouplingScheme scheme;
    scheme.n = n;
    scheme.couples.reserve((words - 1) / 2);
    for (uint64_t w = 0; w + 1 < words; w += 2)
        scheme.couples.push_back({w, w + 1});
    scheme.uncoupled = words - 1;
    return scheme;
}

CouplingScheme CouplingScheme::shuffled(int n, uint64_t seed) {
    check_even_n(n);
    const uint64_t words = word_count(static_cast<uint32_t>(n));
    std::vector<uint64_t> order(words);
    std::iota(order.begin(), order.end(), uint64_t{0});
    Rng rng = make_rng(seed);
    for (size_t i = order.size() - 1; i > 0; --i) {
        const size_t j = static_cast<size_t>(rng() % (i + 1));
        std::swap(order[i], order[j]);
    }
    CouplingScheme scheme;
    scheme.n = n;
    scheme.couples.reserve((words - 1) / 2);
    for (size_t i = 0; i + 1 < order.size(); i += 2)
        scheme.couples.push_back({order[i], order[i + 1]});
    scheme.uncoupled = order.back();
    return scheme;
}

std::vector<uint8_t> ParityConfiguration::decode(const CouplingScheme &scheme) const {
    if (scheme.n != n) throw std::invalid_argument("scheme/configuration n mismatch");
    std::vector<uint8_t> data;
    data.reserve(scheme.couples.size());
    for (const auto &couple : scheme.couples)
        data.push_back(signs[couple[0]] != signs[couple[1]] ? 1 : 0);
    return data;
}

ParityConfiguration apply_choice(const CouplingScheme &scheme,
                                 const std::vector<uint8_t> &data,
                                 const AssignmentChoice &choice) {
    if (data.size() != scheme.couples.size())
        throw std::invalid_argument("data length must equal the couple count");
    if (choice.bits.size() != scheme.couples.size())
        throw std::invalid_argument("choice length must equal the couple count");
    ParityConfiguration config;
    config.n = scheme.n;
    config.wildcard = scheme.uncoupled;
    config.signs.assign(word_count(static_cast<uint32_t>(scheme.n)), int8_t{1});
    for (size_t l = 0; l < scheme.couples.size(); ++l) {
        const int8_t first = choice.bits[l] ? int8_t{-1} : int8_t{1};
        config.signs[scheme.couples[l][0]] = first;
        config.signs[scheme.couples[l][1]] =
            data[l] ? static_cast<int8_t>(-first) : first;
    }
    return config;
}

AssignmentChoice read_choice(const CouplingScheme &scheme,
                             const ParityConfiguration &config) {
    AssignmentChoice choice;
    choice.bits.reserve(scheme.couples.size());
    for (const auto &couple : scheme.couples)
        choice.bits.push_back(config.signs[couple[0]] < 0 ? 1 : 0);
    return choice;
}

namespace {

EigenvalueTable build_table(int n) {
    EigenvalueTable table;
    table.n = n;
    table.contexts = generator_catalog(static_cast<uint32_t>(n));

    std::map<std::vector<uint64_t>, uint32_t> context_of_members;
    for (uint32_t c = 0; c < table.contexts.size(); ++c)
        context_of_members.emplace(table.contexts[c].members, c);

    std::vector<std::vector<EigenvalueTable::Row>> grouped(table.contexts.size());
    std::unordered_map<std::string, bool> seen;
    const uint64_t total = CircuitParams::count(static_cast<uint32_t>(n));
    for (uint64_t id = 0; id < total; ++id) {
        const StabilizerState state =
            build_state(CircuitParams::from_id(static_cast<uint32_t>(n), id));
        auto [it, inserted] = seen.emplace(state.tab.canonical_key(), true);
        if (!inserted) continue;  // ascending ids: the first sighting is kept

        const std::vector<PauliWord> det = deterministic_set(state.tab);
        std::vector<uint64_t> members;
        members.reserve(det.size());
        for (const PauliWord &w : det) members.push_back(w.index());
        const auto ctx = context_of_members.find(members);
        if (ctx == context_of_members.end())
            throw std::logic_error("deterministic set is not a generator context");

        EigenvalueTable::Row row;
        row.params_id = static_cast<uint32_t>(id);
        row.context = ctx->second;
        for (size_t j = 0; j < det.size(); ++j) {
            const int sign =
                state.tab.expectation(GeneralPauli::from_word(det[j]));
            if (sign < 0) row.minus_mask |= uint64_t{1} << j;
        }
        grouped[ctx->second].push_back(row);
    }

    table.context_begin.assign(table.contexts.size() + 1, 0);
    for (uint32_t c = 0; c < table.contexts.size(); ++c) {
        table.context_begin[c + 1] = table.context_begin[c] + grouped[c].size();
        table.rows.insert(table.rows.end(), grouped[c].begin(), grouped[c].end());
    }

    table.word_contexts.assign(word_count(static_cast<uint32_t>(n)), {});
    for (uint32_t c = 0; c < table.contexts.size(); ++c) {
        const auto &members = table.contexts[c].members;
        for (uint8_t j = 0; j < members.size(); ++j)
            table.word_contexts[members[j]].push_back({c, j});
    }
    return table;
}

}  // namespace

const EigenvalueTable &EigenvalueTable::instance(int n) {
    check_even_n(n);
    if (n > 6)
        throw std::length_error("state catalog is materialized only for n <= 6");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<EigenvalueTable>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<EigenvalueTable>(build_table(n))).first;
    return *it->second;
}

namespace {

// Per-context bitmasks of a configuration against a table: bit j of
// target_mask is set when the sign at member j is -1; wild_mask marks the
// member equal to the configuration's free position.
struct TargetMasks {
    std::vector<uint64_t> target;
    std::vector<uint64_t> wild;
};

TargetMasks masks_for(const ParityConfiguration &config,
                      const EigenvalueTable &table) {
    TargetMasks m;
    m.target.assign(table.contexts.size(), 0);
    m.wild.assign(table.contexts.size(), 0);
    for (size_t c = 0; c < table.contexts.size(); ++c) {
        const auto &members = table.contexts[c].members;
        for (size_t j = 0; j < members.size(); ++j) {
            if (config.signs[members[j]] < 0) m.target[c] |= uint64_t{1} << j;
            if (members[j] == config.wildcard) m.wild[c] |= uint64_t{1} << j;
        }
    }
    return m;
}

int64_t weighted_score(const std::vector<int64_t> &m_counts) {
    int64_t score = 100 * m_counts[0];
    if (m_counts.size() > 1) score += 10 * m_counts[1];
    if (m_counts.size() > 2) score += m_counts[2];
    return score;
}

}  // namespace

int64_t score_target(const ParityConfiguration &config,
                     const EigenvalueTable &table) {
    if (config.n != table.n)
        throw std::invalid_argument("configuration/table n mismatch");
    const TargetMasks masks = masks_for(config, table);
    std::vector<int64_t> m_counts(64, 0);
    for (const auto &row : table.rows) {
        const int d = std::popcount(
            (row.minus_mask ^ masks.target[row.context]) & ~masks.wild[row.context]);
        ++m_counts[static_cast<size_t>(d)];
    }
    return weighted_score(m_counts);
}

ParityConfiguration optimize_target(const CouplingScheme &scheme,
                                    const std::vector<uint8_t> &data,
                                    int64_t iterations, Rng &rng) {
    const EigenvalueTable &table = EigenvalueTable::instance(scheme.n);
    AssignmentChoice choice;
    choice.bits.resize(scheme.couples.size());
    for (auto &b : choice.bits) b = static_cast<uint8_t>(rng() & 1);
    ParityConfiguration config = apply_choice(scheme, data, choice);

    TargetMasks masks = masks_for(config, table);
    std::vector<int8_t> distance(table.rows.size());
    std::vector<int64_t> m_counts(64, 0);
    for (size_t r = 0; r < table.rows.size(); ++r) {
        const auto &row = table.rows[r];
        distance[r] = static_cast<int8_t>(std::popcount(
            (row.minus_mask ^ masks.target[row.context]) & ~masks.wild[row.context]));
        ++m_counts[static_cast<size_t>(distance[r])];
    }
    int64_t score = weighted_score(m_counts);

    // Flipping one choice bit flips the configuration sign of both words of
    // that couple; each flipped word touches only the rows of the contexts it
    // belongs to, moving every such row's distance by exactly one.
    auto flip_word = [&](uint64_t w) {
        config.signs[w] = static_cast<int8_t>(-config.signs[w]);
        for (const auto &membership : table.word_contexts[w]) {
            const uint64_t bit = uint64_t{1} << membership.position;
            const uint64_t old_target = masks.target[membership.context];
            masks.target[membership.context] ^= bit;
            for (size_t r = table.context_begin[membership.context];
                 r < table.context_begin[membership.context + 1]; ++r) {
                const bool was_mismatch =
                    ((table.rows[r].minus_mask ^ old_target) & bit) != 0;
                --m_counts[static_cast<size_t>(distance[r])];
                distance[r] = static_cast<int8_t>(distance[r] + (was_mismatch ? -1 : 1));
                ++m_counts[static_cast<size_t>(distance[r])];
            }
        }
    };

    // A single climb plateaus once no flip improves, so the budget is spent
    // on independent restarts, keeping the best configuration seen anywhere.
    const int64_t climb_length =
        std::max<int64_t>(2000, static_cast<int64_t>(scheme.couples.size()) * 50);
    std::vector<int8_t> best_signs = config.signs;
    int64_t best_score = score;
    for (int64_t it = 0; it < iterations; ++it) {
        if (it > 0 && it % climb_length == 0) {
            for (auto &b : choice.bits) b = static_cast<uint8_t>(rng() & 1);
            config = apply_choice(scheme, data, choice);
            masks = masks_for(config, table);
            std::fill(m_counts.begin(), m_counts.end(), 0);
            for (size_t r = 0; r < table.rows.size(); ++r) {
                const auto &row = table.rows[r];
                distance[r] = static_cast<int8_t>(
                    std::popcount((row.minus_mask ^ masks.target[row.context]) &
                                  ~masks.wild[row.context]));
                ++m_counts[static_cast<size_t>(distance[r])];
            }
            score = weighted_score(m_counts);
        }
        const size_t l = static_cast<size_t>(rng() % scheme.couples.size());
        flip_word(scheme.couples[l][0]);
        flip_word(scheme.couples[l][1]);
        const int64_t next = weighted_score(m_counts);
        if (next >= score) {
            score = next;
            choice.bits[l] ^= 1;
            if (score > best_score) {
                best_score = score;
                best_signs = config.signs;
            }
        } else {
            flip_word(scheme.couples[l][0]);
            flip_word(scheme.couples[l][1]);
        }
    }
    config.signs = std::move(best_signs);
    return config;
}

namespace {

// Shared bookkeeping of the stage-2 subset searches: per-word counts of
// included deterministic states agreeing/disagreeing with the target.
struct SubsetCost {
    const EigenvalueTable &table;
    const ParityConfiguration &target;
    const SelectOptions &options;
    std::vector<size_t> pool;        // row indices
    std::vector<uint64_t> agree;     // per pool entry: bit j set when member j
                                     // matches the target (wildcard cleared)
    std::vector<std::vector<uint32_t>> agree_rows;  // per word: pool entries
                                                    // agreeing on that word
    std::vector<char> included;
    std::vector<int> c_agree, c_oppose;  // per word
    int ns = 0;
    int matched_count = 0;

    SubsetCost(const EigenvalueTable &t, const ParityConfiguration &tgt,
               const SelectOptions &opt)
        : table(t), target(tgt), options(opt) {
        const TargetMasks masks = masks_for(tgt, t);
        for (size_t c = 0; c < t.contexts.size(); ++c) {
            int best = std::numeric_limits<int>::max();
            for (size_t r = t.context_begin[c]; r < t.context_begin[c + 1]; ++r)
                best = std::min(best,
                                std::popcount((t.rows[r].minus_mask ^ masks.target[c]) &
                                              ~masks.wild[c]));
            for (size_t r = t.context_begin[c]; r < t.context_begin[c + 1]; ++r) {
                const uint64_t mism =
                    (t.rows[r].minus_mask ^ masks.target[c]) & ~masks.wild[c];
                if (std::popcount(mism) != best) continue;
                pool.push_back(r);
                const uint64_t full =
                    (uint64_t{1} << t.contexts[c].members.size()) - 1;
                agree.push_back(~mism & full & ~masks.wild[c]);
            }
        }
        included.assign(pool.size(), 0);
        c_agree.assign(word_count(static_cast<uint32_t>(t.n)), 0);
        c_oppose.assign(c_agree.size(), 0);
        agree_rows.resize(c_agree.size());
        for (size_t p = 0; p < pool.size(); ++p) {
            const auto &row = t.rows[pool[p]];
            const auto &members = t.contexts[row.context].members;
            for (size_t j = 0; j < members.size(); ++j)
                if (members[j] != tgt.wildcard && (agree[p] & (uint64_t{1} << j)))
                    agree_rows[members[j]].push_back(static_cast<uint32_t>(p));
        }
    }

    void toggle(size_t p) {
        const auto &row = table.rows[pool[p]];
        const auto &members = table.contexts[row.context].members;
        const int delta = included[p] ? -1 : 1;
        for (size_t j = 0; j < members.size(); ++j) {
            const uint64_t w = members[j];
            if (w == target.wildcard) continue;
            const bool was = c_agree[w] > c_oppose[w];
            if (agree[p] & (uint64_t{1} << j))
                c_agree[w] += delta;
            else
                c_oppose[w] += delta;
            matched_count += static_cast<int>(c_agree[w] > c_oppose[w]) -
                             static_cast<int>(was);
        }
        included[p] = !included[p];
        ns += delta;
    }

    // N_s * mean of the kept per-word metrics plus the sparsity term.
    double cost(std::vector<double> &scratch) const {
        if (ns == 0) return std::numeric_limits<double>::infinity();
        scratch.clear();
        for (uint64_t w = 0; w < c_agree.size(); ++w) {
            if (w == target.wildcard) continue;
            const double p =
                0.5 + 0.5 * (c_agree[w] - c_oppose[w]) / static_cast<double>(ns);
            scratch.push_back(sampling_requirement_metric(p, options.metric_cap));
        }
        const size_t drop = std::min<size_t>(
            static_cast<size_t>(std::max(options.tolerance_i, 0)), scratch.size() - 1);
        if (drop > 0)
            std::nth_element(scratch.begin(),
                             scratch.end() - static_cast<ptrdiff_t>(drop) - 1,
                             scratch.end());
        const double sum = std::accumulate(
            scratch.begin(), scratch.end() - static_cast<ptrdiff_t>(drop), 0.0);
        const double mean = sum / static_cast<double>(scratch.size() - drop);
        return ns * mean + options.sparsity_penalty * ns;
    }

    int matched() const { return matched_count; }

    std::vector<CircuitParams> selected_params() const {
        std::vector<CircuitParams> out;
        for (size_t p = 0; p < pool.size(); ++p)
            if (included[p])
                out.push_back(CircuitParams::from_id(
                    static_cast<uint32_t>(table.n), table.rows[pool[p]].params_id));
        std::sort(out.begin(), out.end(),
                  [](const CircuitParams &a, const CircuitParams &b) {
                      return a.id() < b.id();
                  });
        return out;
    }
};

void free_size_search(SubsetCost &state, const SelectOptions &options, Rng &rng,
                      std::vector<char> &best, std::vector<double> *audit) {
    std::vector<double> scratch;
    for (size_t p = 0; p < state.pool.size(); ++p)
        if (!state.included[p]) state.toggle(p);
    double current = state.cost(scratch);
    double best_cost = current;
    best = state.included;
    if (audit) audit->push_back(current);

    auto pick = [&](bool member) {
        size_t p;
        do {
            p = static_cast<size_t>(rng() % state.pool.size());
        } while (static_cast<bool>(state.included[p]) != member);
        return p;
    };

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int64_t it = 0; it < options.iterations; ++it) {
        if (unit(rng) < options.branch_probability) {
            const int depth = 1 + static_cast<int>(rng() % static_cast<uint64_t>(
                                      std::max(options.branch_depth, 1)));
            for (int d = 0; d < depth; ++d)
                state.toggle(static_cast<size_t>(rng() % state.pool.size()));
            current = state.cost(scratch);
        } else if ((rng() & 1) && state.ns > 0 &&
                   static_cast<size_t>(state.ns) < state.pool.size()) {
            // Exchange one state for another; this keeps the size fixed and
            // reaches rearrangements a single downhill toggle cannot.
            const size_t out = pick(true);
            const size_t in = pick(false);
            state.toggle(out);
            state.toggle(in);
            const double next = state.cost(scratch);
            if (next < current) {
                current = next;
            } else {
                state.toggle(in);
                state.toggle(out);
                continue;
            }
        } else {
            const size_t p = static_cast<size_t>(rng() % state.pool.size());
            state.toggle(p);
            const double next = state.cost(scratch);
            if (next < current) {
                current = next;
            } else {
                state.toggle(p);
                continue;
            }
        }
        if (current < best_cost) {
            best_cost = current;
            best = state.included;
            if (audit) audit->push_back(current);
        }
    }
}

// Fills the subset up to `want` states, each time adding a candidate that
// maximises the number of matched words.  The first fill breaks ties toward
// the lowest state id; plateau restarts break them at random to diversify.
void greedy_fill(SubsetCost &state, size_t want, Rng &rng,
                 std::vector<size_t> &cand, bool random_ties) {
    while (static_cast<size_t>(state.ns) < want) {
        int best_gain = std::numeric_limits<int>::min();
        cand.clear();
        const int base = state.matched();
        for (size_t p = 0; p < state.pool.size(); ++p) {
            if (state.included[p]) continue;
            state.toggle(p);
            const int gain = state.matched() - base;
            state.toggle(p);
            if (gain > best_gain) {
                best_gain = gain;
                cand.clear();
            }
            if (gain == best_gain) cand.push_back(p);
        }
        size_t chosen = cand[random_ties
                                 ? static_cast<size_t>(rng() % cand.size())
                                 : 0];
        if (!random_ties)
            for (const size_t p : cand)
                if (state.table.rows[state.pool[p]].params_id <
                    state.table.rows[state.pool[chosen]].params_id)
                    chosen = p;
        state.toggle(chosen);
    }
}

void fixed_size_search(SubsetCost &state, const SelectOptions &options, Rng &rng,
                       std::vector<char> &best) {
    const size_t want =
        std::min<size_t>(static_cast<size_t>(options.size_target), state.pool.size());
    std::vector<size_t> cand;
    greedy_fill(state, want, rng, cand, /*random_ties=*/false);

    std::vector<double> scratch;
    int cur_matched = state.matched();
    double cur_cost = state.cost(scratch);
    int best_matched = cur_matched;
    double best_cost = cur_cost;
    best = state.included;
    if (want == state.pool.size()) return;  // nothing to swap

    auto pick = [&](bool member) {
        size_t p;
        do {
            p = static_cast<size_t>(rng() % state.pool.size());
        } while (static_cast<bool>(state.included[p]) != member);
        return p;
    };

    const uint64_t words = static_cast<uint64_t>(state.c_agree.size());
    std::vector<uint64_t> unmatched;
    // Restart from a fresh greedy subset when the best tuple stops moving.
    const int64_t plateau = std::max<int64_t>(4000, options.iterations / 8);
    int64_t stale = 0;

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int64_t it = 0; it < options.iterations; ++it) {
        size_t in;
        if ((rng() & 1) && cur_matched + 1 < static_cast<int>(words)) {
            // Target a specific unmatched word: swap in a state that agrees
            // with the target on it.
            unmatched.clear();
            for (uint64_t w = 0; w < words; ++w)
                if (w != state.target.wildcard &&
                    state.c_agree[w] <= state.c_oppose[w])
                    unmatched.push_back(w);
            const auto &rows =
                state.agree_rows[unmatched[static_cast<size_t>(
                    rng() % unmatched.size())]];
            cand.clear();
            for (const uint32_t p : rows)
                if (!state.included[p]) cand.push_back(p);
            in = cand.empty() ? pick(false)
                              : cand[static_cast<size_t>(rng() % cand.size())];
        } else {
            in = pick(false);
        }
        const size_t out = pick(true);
        state.toggle(out);
        state.toggle(in);
        const int next_matched = state.matched();
        const bool forced = unit(rng) < options.branch_probability;
        if (!forced && next_matched < cur_matched) {
            state.toggle(in);
            state.toggle(out);
            ++stale;
        } else {
            const double next_cost = state.cost(scratch);
            const bool better =
                next_matched > cur_matched ||
                (next_matched == cur_matched && next_cost <= cur_cost);
            if (forced || better) {
                cur_matched = next_matched;
                cur_cost = next_cost;
                if (next_matched > best_matched ||
                    (next_matched == best_matched && next_cost < best_cost)) {
                    best_matched = next_matched;
                    best_cost = next_cost;
                    best = state.included;
                    stale = 0;
                } else {
                    ++stale;
                }
            } else {
                state.toggle(in);
                state.toggle(out);
                ++stale;
            }
        }
        if (stale >= plateau && it + 1 < options.iterations) {
            for (size_t p = 0; p < state.pool.size(); ++p)
                if (state.included[p]) state.toggle(p);
            greedy_fill(state, want, rng, cand, /*random_ties=*/true);
            cur_matched = state.matched();
            cur_cost = state.cost(scratch);
            stale = 0;
        }
    }
}

}  // namespace

StateSelection select_states(const ParityConfiguration &target,
                             const SelectOptions &options, Rng &rng) {
    const EigenvalueTable &table = EigenvalueTable::instance(target.n);
    SubsetCost state(table, target, options);
    if (state.pool.empty()) throw std::logic_error("empty candidate pool");

    std::vector<char> best;
    StateSelection selection;
    if (options.size_target > 0) {
        fixed_size_search(state, options, rng, best);
    } else {
        free_size_search(state, options, rng, best,
                         options.record_audit ? &selection.audit : nullptr);
    }

    for (size_t p = 0; p < state.pool.size(); ++p)
        if (static_cast<bool>(state.included[p]) != static_cast<bool>(best[p]))
            state.toggle(p);

    selection.n = target.n;
    selection.target = target;
    selection.states = state.selected_params();
    selection.report = selection_report(target.n, selection.states,
                                        selection.target, options.tolerance_i,
                                        options.metric_cap);
    return selection;
}

SelectionReport selection_report(int n, const std::vector<CircuitParams> &states,
                                 ParityConfiguration &target, int tolerance_i,
                                 double metric_cap) {
    const uint64_t words = word_count(static_cast<uint32_t>(n));
    std::vector<int> plus(words, 0), minus(words, 0);
    for (const CircuitParams &params : states) {
        const StabilizerState state = build_state(params);
        for (uint64_t w = 0; w < words; ++w) {
            const int e = state.tab.expectation(
                GeneralPauli::from_word(PauliWord::from_index(
                    static_cast<uint32_t>(n), w)));
            if (e > 0)
                ++plus[w];
            else if (e < 0)
                ++minus[w];
        }
    }

    const uint64_t wc = target.wildcard;
    target.signs[wc] = plus[wc] >= minus[wc] ? int8_t{1} : int8_t{-1};

    SelectionReport report;
    const auto ns = static_cast<double>(states.size());
    report.p_target.assign(words, 0.5);
    std::vector<double> metrics;
    for (uint64_t w = 0; w < words; ++w) {
        const int c_tgt = target.signs[w] > 0 ? plus[w] : minus[w];
        const int c_opp = target.signs[w] > 0 ? minus[w] : plus[w];
        if (!states.empty())
            report.p_target[w] = 0.5 + 0.5 * (c_tgt - c_opp) / ns;
        if (w == wc) continue;
        if (c_tgt > c_opp) ++report.matched;
        metrics.push_back(sampling_requirement_metric(report.p_target[w], metric_cap));
    }
    report.fe = (report.matched + 1) / static_cast<double>(words);
    report.fe_strict = report.matched / static_cast<double>(words - 1);

    const size_t drop = std::min<size_t>(
        static_cast<size_t>(std::max(tolerance_i, 0)), metrics.size() - 1);
    if (drop > 0)
        std::nth_element(metrics.begin(),
                         metrics.end() - static_cast<ptrdiff_t>(drop) - 1,
                         metrics.end());
    const double sum = std::accumulate(
        metrics.begin(), metrics.end() - static_cast<ptrdiff_t>(drop), 0.0);
    report.cost = ns * sum / static_cast<double>(metrics.size() - drop);

    const RetrievalPlan plan = plan_from_fe(n, ns, report.fe);
    report.NO = plan.NO;
    report.T = plan.T;
    report.nu = plan.nu;
    report.S = plan.S;
    return report;
}

StateSelection encode_with_scheme(const CouplingScheme &scheme,
                                  const std::vector<uint8_t> &data,
                                  const EncodeOptions &options) {
    Rng rng = make_rng(options.seed);
    const ParityConfiguration target =
        optimize_target(scheme, data, options.stage1_iterations, rng);
    StateSelection selection = select_states(target, options.select, rng);
    if (selection.target.decode(scheme) != data)
        throw std::logic_error("encoded target no longer decodes to the data");
    return selection;
}

StateSelection encode(const std::vector<uint8_t> &data, int n,
                      const EncodeOptions &options) {
    return encode_with_scheme(CouplingScheme::standard(n), data, options);
}

std::vector<uint8_t> pi_quarter_bits(size_t m) {
    if (m == 0) return {};
    mpfr_t pi;
    mpfr_init2(pi, static_cast<mpfr_prec_t>(m + 64));
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_mul_2si(pi, pi, static_cast<long>(m) - 2, MPFR_RNDN);  // (pi/4) * 2^m
    mpz_t z;
    mpz_init(z);
    mpfr_get_z(z, pi, MPFR_RNDZ);
    std::vector<uint8_t> bits(m);
    for (size_t k = 0; k < m; ++k)
        bits[k] = static_cast<uint8_t>(mpz_tstbit(z, static_cast<mp_bitcnt_t>(m - 1 - k)));
    mpz_clear(z);
    mpfr_clear(pi);
    return bits;
}

namespace {

std::string bits_to_string(const std::vector<uint8_t> &bits) {
    std::string s;
    s.reserve(bits.size());
    for (uint8_t b : bits) s.push_back(b ? '1' : '0');
    return s;
}

std::vector<uint8_t> string_to_bits(const std::string &s) {
    std::vector<uint8_t> bits;
    bits.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("bad bit character");
        bits.push_back(c == '1' ? 1 : 0);
    }
    return bits;
}

}  // namespace

std::string manifest_json(const StateSelection &selection,
                          const CouplingScheme &scheme,
                          const std::vector<uint8_t> &data, uint64_t seed,
                          int64_t budget) {
    nlohmann::ordered_json j;
    j["n"] = selection.n;
    j["seed"] = seed;
    j["budget"] = budget;
    j["data"] = bits_to_string(data);
    auto couples = nlohmann::ordered_json::array();
    for (const auto &c : scheme.couples)
        couples.push_back(nlohmann::ordered_json::array({c[0], c[1]}));
    j["couples"] = std::move(couples);
    j["wildcard"] = scheme.uncoupled;
    std::string signs;
    for (int8_t s : selection.target.signs) signs.push_back(s > 0 ? '+' : '-');
    j["target_signs"] = signs;
    auto states = nlohmann::ordered_json::array();
    for (const CircuitParams &p : selection.states) {
        const std::string text = p.str();
        const size_t comma = text.find(',');
        states.push_back(nlohmann::ordered_json{
            {"alpha", text.substr(0, comma)},
            {"beta", text.substr(comma + 1)},
            {"params_id", p.id()},
        });
    }
    j["states"] = std::move(states);
    j["report"] = nlohmann::ordered_json{
        {"matched", selection.report.matched},
        {"fe", selection.report.fe},
        {"fe_strict", selection.report.fe_strict},
        {"cost", selection.report.cost},
        {"NO", selection.report.NO},
        {"T", selection.report.T},
        {"nu", selection.report.nu},
        {"S", selection.report.S},
        {"p_O", selection.report.p_target},
    };
    return j.dump(2) + "\n";
}

namespace {

Manifest parse_manifest_fields(const nlohmann::ordered_json &j) {
    Manifest m;
    m.n = j.at("n").get<int>();
    check_even_n(m.n);
    m.seed = j.at("seed").get<uint64_t>();
    m.budget = j.at("budget").get<int64_t>();
    m.data = string_to_bits(j.at("data").get<std::string>());

    const uint64_t words = word_count(static_cast<uint32_t>(m.n));
    m.scheme.n = m.n;
    for (const auto &c : j.at("couples")) {
        const uint64_t a = c.at(0).get<uint64_t>(), b = c.at(1).get<uint64_t>();
        if (a >= words || b >= words)
            throw std::invalid_argument("couple index out of range");
        m.scheme.couples.push_back({a, b});
    }
    m.scheme.uncoupled = j.at("wildcard").get<uint64_t>();
    if (m.scheme.uncoupled >= words)
        throw std::invalid_argument("wildcard index out of range");
    if (m.data.size() != m.scheme.couples.size())
        throw std::invalid_argument("data/couple count mismatch");

    const std::string signs = j.at("target_signs").get<std::string>();
    if (signs.size() != words)
        throw std::invalid_argument("target sign string has the wrong length");
    m.target.n = m.n;
    m.target.wildcard = m.scheme.uncoupled;
    for (char c : signs) {
        if (c != '+' && c != '-') throw std::invalid_argument("bad sign character");
        m.target.signs.push_back(c == '+' ? int8_t{1} : int8_t{-1});
    }

    for (const auto &s : j.at("states")) {
        const CircuitParams params =
            CircuitParams::parse(s.at("alpha").get<std::string>() + "," +
                                 s.at("beta").get<std::string>());
        if (params.n != static_cast<uint32_t>(m.n))
            throw std::invalid_argument("state parameter size mismatch");
        if (params.id() != s.at("params_id").get<uint64_t>())
            throw std::invalid_argument("state id does not match its parameters");
        m.states.push_back(params);
    }

    const auto &r = j.at("report");
    m.report.matched = r.at("matched").get<int>();
    m.report.fe = r.at("fe").get<double>();
    m.report.fe_strict = r.at("fe_strict").get<double>();
    m.report.cost = r.at("cost").get<double>();
    m.report.NO = r.at("NO").get<double>();
    m.report.T = r.at("T").get<int>();
    m.report.nu = r.at("nu").get<double>();
    m.report.S = r.at("S").get<int64_t>();
    m.report.p_target = r.at("p_O").get<std::vector<double>>();
    return m;
}

}  // namespace

Manifest parse_manifest(const std::string &text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("manifest is not valid JSON: ") +
                                    e.what());
    }
    try {
        return parse_manifest_fields(j);
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("manifest field error: ") +
                                    e.what());
    }
}

}  // namespace cqrac
