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

#include "cqrac/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "cqrac/sampling.hpp"

namespace cqrac {

double observable_load(int n, double Ns) {
    const double context_size = std::ldexp(1.0, n - 1) + 1.0;
    return Ns * context_size / std::pow(3.0, n);
}

namespace {

RetrievalPlan finish_plan(double Ns, double NO, int T) {
    RetrievalPlan plan;
    plan.T = T;
    plan.NO = NO;
    plan.nu = (Ns - NO) * std::ldexp(1.0, 1 - T);
    plan.S = std::llround(3.0 * (Ns - NO) + T * NO);
    plan.hard_bound = static_cast<int64_t>(std::ceil(T * Ns));
    return plan;
}

}  // namespace

RetrievalPlan plan_from_nu(double Ns, double NO, double nu_target) {
    if (!(nu_target > 0.0)) throw std::domain_error("nu must be positive");
    const double diff = Ns - NO;
    if (diff <= 0.0 || nu_target >= diff) {
        RetrievalPlan plan = finish_plan(Ns, NO, 1);
        plan.degenerate = true;
        return plan;
    }
    const int T = static_cast<int>(
        std::ceil(std::log2(diff) - std::log2(nu_target) + 1.0));
    return finish_plan(Ns, NO, std::max(T, 1));
}

RetrievalPlan plan_from_T(double Ns, double NO, int T) {
    if (T < 1) throw std::domain_error("T must be at least 1");
    return finish_plan(Ns, NO, T);
}

RetrievalPlan plan_from_fe(int n, double Ns, double fe) {
    const double NO = observable_load(n, Ns);
    const double diff = Ns - NO;
    if (diff <= 0.0) {
        RetrievalPlan plan = finish_plan(Ns, NO, 1);
        plan.degenerate = true;
        return plan;
    }
    const double fe_eff =
        fe < 1.0 ? fe : 1.0 - 1.0 / std::pow(3.0, n);
    const double nu_target = (1.0 - fe_eff) / 10.0;
    if (nu_target >= diff) {
        RetrievalPlan plan = finish_plan(Ns, NO, 1);
        plan.degenerate = true;
        return plan;
    }
    int best_T = 2;
    double best_err = std::abs(diff * std::ldexp(1.0, 1 - 2) - nu_target);
    for (int T = 3; T <= 63; ++T) {
        const double err = std::abs(diff * std::ldexp(1.0, 1 - T) - nu_target);
        if (err < best_err) {
            best_err = err;
            best_T = T;
        }
    }
    return finish_plan(Ns, NO, best_T);
}

double expected_samples(double Ns, double NO, int T) {
    if (T < 1) throw std::domain_error("T must be at least 1");
    return NO * T + (Ns - NO) * (3.0 - std::ldexp(1.0, 2 - T));
}

namespace {

void log_row(std::vector<TranscriptRow> *transcript, uint64_t trial,
             const std::string &obs, int step, uint32_t state_id, int outcome,
             bool discarded) {
    if (!transcript) return;
    transcript->push_back({trial, obs, step, state_id,
                           static_cast<int8_t>(outcome), discarded});
}

RetrievalOutcome vote(const std::vector<char> &alive,
                      const std::vector<int8_t> &last,
                      const std::vector<int> &deterministic,
                      int64_t samples_used, Rng &rng) {
    RetrievalOutcome out;
    out.samples_used = samples_used;
    int64_t plus = 0, minus = 0;
    for (size_t i = 0; i < alive.size(); ++i) {
        if (!alive[i]) continue;
        ++out.survivors;
        if (deterministic[i] == 0) ++out.unfiltered_unbiased;
        if (last[i] > 0)
            ++plus;
        else
            ++minus;
    }
    if (out.survivors == 0) {
        out.status = ParityStatus::Unresolved;
        out.parity = 0;
    } else if (plus != minus) {
        out.status = ParityStatus::Resolved;
        out.parity = plus > minus ? int8_t{1} : int8_t{-1};
    } else {
        out.status = ParityStatus::TieBroken;
        out.parity = static_cast<int8_t>(coin_pm1(rng));
    }
    return out;
}

}  // namespace

RetrievalOutcome retrieve_parity(const std::vector<StabilizerState> &states,
                                 const PauliWord &obs, int T, Rng &rng,
                                 std::vector<TranscriptRow> *transcript,
                                 uint64_t trial) {
    if (states.empty()) throw std::invalid_argument("selection is empty");
    if (T < 1) throw std::domain_error("T must be at least 1");
    const GeneralPauli gp = GeneralPauli::from_word(obs);
    const std::string obs_text = obs.str();

    std::vector<int> deterministic(states.size());
    for (size_t i = 0; i < states.size(); ++i)
        deterministic[i] = states[i].tab.expectation(gp);

    std::vector<char> alive(states.size(), 1);
    std::vector<int8_t> last(states.size(), 0);
    int64_t samples_used = 0;
    for (int step = 1; step <= T; ++step) {
        for (size_t i = 0; i < states.size(); ++i) {
            if (!alive[i]) continue;
            const int outcome =
                deterministic[i] != 0 ? deterministic[i] : coin_pm1(rng);
            ++samples_used;
            const bool mismatch = step > 1 && outcome != last[i];
            if (mismatch) alive[i] = 0;
            last[i] = static_cast<int8_t>(outcome);
            log_row(transcript, trial, obs_text, step,
                    static_cast<uint32_t>(states[i].params.id()), outcome,
                    mismatch);
        }
    }
    return vote(alive, last, deterministic, samples_used, rng);
}

std::vector<RetrievalOutcome> retrieve_group(
    const std::vector<StabilizerState> &states,
    const std::vector<PauliWord> &members, int T, Rng &rng,
    std::vector<TranscriptRow> *transcript, uint64_t trial) {
    if (states.empty()) throw std::invalid_argument("selection is empty");
    if (members.empty()) throw std::invalid_argument("no observables requested");
    if (T < 1) throw std::domain_error("T must be at least 1");
    for (size_t a = 0; a < members.size(); ++a)
        for (size_t b = a + 1; b < members.size(); ++b)
            if (!members[a].commutes_with(members[b]))
                throw std::invalid_argument(
                    "group retrieval requires commuting observables");

    std::vector<GeneralPauli> gps;
    std::vector<std::string> texts;
    for (const PauliWord &w : members) {
        gps.push_back(GeneralPauli::from_word(w));
        texts.push_back(w.str());
    }

    const size_t S = states.size(), M = members.size();
    std::vector<int> deterministic(S * M);
    for (size_t i = 0; i < S; ++i)
        for (size_t m = 0; m < M; ++m)
            deterministic[i * M + m] = states[i].tab.expectation(gps[m]);

    std::vector<char> alive(S * M, 1);
    std::vector<int8_t> last(S * M, 0);
    int64_t samples_used = 0;
    for (int step = 1; step <= T; ++step) {
        for (size_t i = 0; i < S; ++i) {
            bool any = false;
            for (size_t m = 0; m < M; ++m) any = any || alive[i * M + m];
            if (!any) continue;
            ++samples_used;  // one fresh copy covers the whole member list
            Tableau copy = states[i].tab;
            for (size_t m = 0; m < M; ++m) {
                const int outcome = copy.measure(gps[m], rng);
                if (!alive[i * M + m]) continue;
                const bool mismatch = step > 1 && outcome != last[i * M + m];
                if (mismatch) alive[i * M + m] = 0;
                last[i * M + m] = static_cast<int8_t>(outcome);
                log_row(transcript, trial, texts[m], step,
                        static_cast<uint32_t>(states[i].params.id()), outcome,
                        mismatch);
            }
        }
    }

    std::vector<RetrievalOutcome> outcomes;
    outcomes.reserve(M);
    std::vector<char> member_alive(S);
    std::vector<int8_t> member_last(S);
    std::vector<int> member_det(S);
    for (size_t m = 0; m < M; ++m) {
        for (size_t i = 0; i < S; ++i) {
            member_alive[i] = alive[i * M + m];
            member_last[i] = last[i * M + m];
            member_det[i] = deterministic[i * M + m];
        }
        outcomes.push_back(
            vote(member_alive, member_last, member_det, samples_used, rng));
    }
    return outcomes;
}

BitOutcome retrieve_bit(const Manifest &manifest, size_t couple_index, int T,
                        Rng &rng, std::vector<TranscriptRow> *transcript,
                        uint64_t trial) {
    if (couple_index >= manifest.scheme.couples.size())
        throw std::out_of_range("couple index out of range");
    std::vector<StabilizerState> states;
    states.reserve(manifest.states.size());
    for (const CircuitParams &p : manifest.states) states.push_back(build_state(p));

    const auto &couple = manifest.scheme.couples[couple_index];
    const PauliWord a =
        PauliWord::from_index(static_cast<uint32_t>(manifest.n), couple[0]);
    const PauliWord b =
        PauliWord::from_index(static_cast<uint32_t>(manifest.n), couple[1]);

    BitOutcome out;
    if (a.commutes_with(b)) {
        const auto both = retrieve_group(states, {a, b}, T, rng, transcript, trial);
        out.first = both[0];
        out.second = both[1];
    } else {
        out.first = retrieve_parity(states, a, T, rng, transcript, trial);
        out.second = retrieve_parity(states, b, T, rng, transcript, trial);
    }
    if (out.first.parity != 0 && out.second.parity != 0) {
        out.resolved = true;
        out.bit = out.first.parity != out.second.parity ? 1 : 0;
    }
    return out;
}

double amplification_success(double fbar, int r) {
    if (r < 1 || r % 2 == 0) throw std::invalid_argument("r must be odd");
    if (fbar < 0.0 || fbar > 1.0) throw std::domain_error("fbar must lie in [0, 1]");
    if (r == 1) return fbar;
    return majority_probability(r, fbar);
}

AmplifiedResult amplified_retrieve(const std::vector<uint8_t> &data, int n,
                                   int r, int T, const EncodeOptions &base,
                                   uint64_t seed) {
    if (r < 1 || r % 2 == 0) throw std::invalid_argument("r must be odd");
    const size_t m = data.size();
    AmplifiedResult result;
    result.votes.assign(m, 0);
    result.resolved_counts.assign(m, 0);

    for (int rep = 0; rep < r; ++rep) {
        const CouplingScheme scheme =
            rep == 0 ? CouplingScheme::standard(n)
                     : CouplingScheme::shuffled(
                           n, derive_seed(seed, 1000 + static_cast<uint64_t>(rep)));
        EncodeOptions options = base;
        options.seed = derive_seed(seed, static_cast<uint64_t>(rep));
        const StateSelection selection = encode_with_scheme(scheme, data, options);

        Manifest manifest;
        manifest.n = n;
        manifest.seed = options.seed;
        manifest.data = data;
        manifest.scheme = scheme;
        manifest.target = selection.target;
        manifest.states = selection.states;
        manifest.report = selection.report;

        Rng rng = make_rng(derive_seed(seed, 5000 + static_cast<uint64_t>(rep)));
        for (size_t l = 0; l < m; ++l) {
            const BitOutcome bit = retrieve_bit(manifest, l, T, rng);
            if (!bit.resolved) continue;
            ++result.resolved_counts[l];
            result.votes[l] += bit.bit;
        }
    }

    result.bits.assign(m, 0);
    for (size_t l = 0; l < m; ++l)
        result.bits[l] =
            2 * result.votes[l] > result.resolved_counts[l] ? 1 : 0;
    return result;
}

std::string transcript_csv(const std::vector<TranscriptRow> &rows) {
    std::string out = "trial,observable,step,state_id,outcome,discarded\n";
    char buf[128];
    for (const TranscriptRow &row : rows) {
        std::snprintf(buf, sizeof buf, "%llu,%s,%d,%lu,%d,%d\n",
                      static_cast<unsigned long long>(row.trial),
                      row.observable.c_str(), row.step,
                      static_cast<unsigned long>(row.state_id),
                      static_cast<int>(row.outcome), row.discarded ? 1 : 0);
        out += buf;
    }
    return out;
}

}  // namespace cqrac
