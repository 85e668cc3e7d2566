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

#include "cqrac/tableau.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cqrac {

// ---------------------------------------------------------------------------
// CircuitParams

uint64_t CircuitParams::count(uint32_t n) {
    uint64_t c = 2;
    for (uint32_t i = 0; i < n; ++i) c *= 6;
    return c;
}

void CircuitParams::validate() const {
    if (n < 2 || (n % 2) != 0)
        throw std::invalid_argument("circuit parameters require even n >= 2");
    if (alpha.size() != static_cast<size_t>(n) + 1)
        throw std::invalid_argument("alpha must hold n+1 bits");
    if (beta.size() != static_cast<size_t>(n))
        throw std::invalid_argument("beta must hold n trits");
    for (int a : alpha)
        if (a != 0 && a != 1) throw std::invalid_argument("alpha entries must be 0 or 1");
    for (int b : beta)
        if (b < 0 || b > 2) throw std::invalid_argument("beta entries must be 0, 1 or 2");
}

uint64_t CircuitParams::id() const {
    validate();
    uint64_t a = 0;
    for (uint32_t k = 0; k <= n; ++k) a = a * 2 + static_cast<uint64_t>(alpha[k]);
    uint64_t b = 0;
    for (uint32_t q = 1; q <= n; ++q) b = b * 3 + static_cast<uint64_t>(beta[q - 1]);
    uint64_t pow3 = 1;
    for (uint32_t i = 0; i < n; ++i) pow3 *= 3;
    return a * pow3 + b;
}

CircuitParams CircuitParams::from_id(uint32_t n, uint64_t id) {
    if (id >= count(n)) throw std::invalid_argument("parameter id out of range");
    uint64_t pow3 = 1;
    for (uint32_t i = 0; i < n; ++i) pow3 *= 3;
    uint64_t a = id / pow3;
    uint64_t b = id % pow3;
    CircuitParams p;
    p.n = n;
    p.alpha.assign(n + 1, 0);
    p.beta.assign(n, 0);
    for (uint32_t k = 0; k <= n; ++k) {
        p.alpha[n - k] = static_cast<int>(a % 2);
        a /= 2;
    }
    for (uint32_t q = n; q >= 1; --q) {
        p.beta[q - 1] = static_cast<int>(b % 3);
        b /= 3;
    }
    return p;
}

std::string CircuitParams::str() const {
    std::string s;
    s.reserve(2 * n + 2);
    for (int a : alpha) s.push_back(static_cast<char>('0' + a));
    s.push_back(',');
    for (int b : beta) s.push_back(static_cast<char>('0' + b));
    return s;
}

CircuitParams CircuitParams::parse(std::string_view text) {
    auto comma = text.find(',');
    if (comma == std::string_view::npos)
        throw std::invalid_argument("expected '<alpha>,<beta>'");
    std::string_view as = text.substr(0, comma);
    std::string_view bs = text.substr(comma + 1);
    if (bs.empty() || as.size() != bs.size() + 1)
        throw std::invalid_argument("alpha must hold exactly one more digit than beta");
    CircuitParams p;
    p.n = static_cast<uint32_t>(bs.size());
    for (char c : as) {
        if (c != '0' && c != '1') throw std::invalid_argument("alpha digits must be 0 or 1");
        p.alpha.push_back(c - '0');
    }
    for (char c : bs) {
        if (c < '0' || c > '2') throw std::invalid_argument("beta digits must be 0, 1 or 2");
        p.beta.push_back(c - '0');
    }
    p.validate();
    return p;
}

// ---------------------------------------------------------------------------
// Circuit listings

std::string Circuit::to_text() const {
    std::ostringstream out;
    for (const Gate &g : gates) {
        switch (g.kind) {
            case GateKind::H: out << "h " << g.q << '\n'; break;
            case GateKind::S: out << "s " << g.q << '\n'; break;
            case GateKind::Z: out << "z " << g.q << '\n'; break;
            case GateKind::X: out << "x " << g.q << '\n'; break;
            case GateKind::CX: out << "cx " << g.q << ' ' << g.q2 << '\n'; break;
            case GateKind::Gamma: out << "gamma" << g.label << ' ' << g.q << '\n'; break;
            case GateKind::Measure: out << "measure " << g.q << '\n'; break;
        }
    }
    return out.str();
}

namespace {

void push_gamma_decomposed(Circuit &c, uint32_t q, int label) {
    switch (label) {
        case 0:
            break;
        case 1:  // H * Z * S applied right to left: S first.
            c.gates.push_back({GateKind::S, q, 0, 0});
            c.gates.push_back({GateKind::Z, q, 0, 0});
            c.gates.push_back({GateKind::H, q, 0, 0});
            break;
        case 2:  // S * H: H first.
            c.gates.push_back({GateKind::H, q, 0, 0});
            c.gates.push_back({GateKind::S, q, 0, 0});
            break;
        default:
            throw std::invalid_argument("gamma label must be 0, 1 or 2");
    }
}

}  // namespace

Circuit preparation_circuit(const CircuitParams &params) {
    params.validate();
    const uint32_t n = params.n;
    Circuit c;
    c.n_qubits = n;
    c.gates.push_back({GateKind::H, 1, 0, 0});
    for (uint32_t q = 1; q < n; ++q) c.gates.push_back({GateKind::CX, q, q + 1, 0});
    if (params.alpha[0]) c.gates.push_back({GateKind::S, 1, 0, 0});
    if (params.alpha[1]) c.gates.push_back({GateKind::Z, 1, 0, 0});
    for (uint32_t i = 2; i <= n; ++i)
        if (params.alpha[i]) c.gates.push_back({GateKind::X, i, 0, 0});
    for (uint32_t q = 1; q <= n; ++q) push_gamma_decomposed(c, q, params.beta[q - 1]);
    return c;
}

Circuit measurement_circuit(const PauliWord &obs) {
    const uint32_t n = obs.n;
    Circuit c;
    c.n_qubits = n + 1;
    for (uint32_t q = 1; q <= n; ++q) {
        int label = 0;
        switch (obs.letter(q)) {
            case Letter::X: label = 2; break;
            case Letter::Y: label = 1; break;
            case Letter::Z: label = 0; break;
        }
        c.gates.push_back({GateKind::Gamma, q, 0, label});
    }
    for (uint32_t q = 1; q <= n; ++q) c.gates.push_back({GateKind::CX, q, n + 1, 0});
    c.gates.push_back({GateKind::Measure, n + 1, 0, 0});
    return c;
}

// ---------------------------------------------------------------------------
// Tableau

Tableau Tableau::zero_state(uint32_t n) {
    if (n == 0 || n > 64) throw std::invalid_argument("tableau supports 1..64 qubits");
    Tableau t;
    t.n = n;
    t.stab.reserve(n);
    t.destab.reserve(n);
    for (uint32_t q = 1; q <= n; ++q) {
        GeneralPauli z = GeneralPauli::identity(n);
        z.z_mask = 1ULL << (q - 1);
        GeneralPauli x = GeneralPauli::identity(n);
        x.x_mask = 1ULL << (q - 1);
        t.stab.push_back(z);
        t.destab.push_back(x);
    }
    return t;
}

namespace {

template <typename F>
void for_all_rows(Tableau &t, F &&f) {
    for (auto &r : t.stab) f(r);
    for (auto &r : t.destab) f(r);
}

}  // namespace

void Tableau::apply_h(uint32_t q) {
    const uint64_t bit = 1ULL << (q - 1);
    for_all_rows(*this, [&](GeneralPauli &r) {
        if ((r.x_mask & bit) && (r.z_mask & bit))
            r.phase_exp = static_cast<uint8_t>((r.phase_exp + 2) & 3);
        const bool x = r.x_mask & bit;
        const bool z = r.z_mask & bit;
        r.x_mask = z ? (r.x_mask | bit) : (r.x_mask & ~bit);
        r.z_mask = x ? (r.z_mask | bit) : (r.z_mask & ~bit);
    });
}

void Tableau::apply_s(uint32_t q) {
    const uint64_t bit = 1ULL << (q - 1);
    for_all_rows(*this, [&](GeneralPauli &r) {
        if (r.x_mask & bit) {
            r.phase_exp = static_cast<uint8_t>((r.phase_exp + 1) & 3);
            r.z_mask ^= bit;
        }
    });
}

void Tableau::apply_z(uint32_t q) {
    const uint64_t bit = 1ULL << (q - 1);
    for_all_rows(*this, [&](GeneralPauli &r) {
        if (r.x_mask & bit) r.phase_exp = static_cast<uint8_t>((r.phase_exp + 2) & 3);
    });
}

void Tableau::apply_x(uint32_t q) {
    const uint64_t bit = 1ULL << (q - 1);
    for_all_rows(*this, [&](GeneralPauli &r) {
        if (r.z_mask & bit) r.phase_exp = static_cast<uint8_t>((r.phase_exp + 2) & 3);
    });
}

void Tableau::apply_cx(uint32_t c, uint32_t t) {
    if (c == t) throw std::invalid_argument("cx needs distinct qubits");
    const uint64_t cb = 1ULL << (c - 1);
    const uint64_t tb = 1ULL << (t - 1);
    for_all_rows(*this, [&](GeneralPauli &r) {
        if (r.x_mask & cb) r.x_mask ^= tb;
        if (r.z_mask & tb) r.z_mask ^= cb;
    });
}

void Tableau::apply_gamma(uint32_t q, int label) {
    switch (label) {
        case 0:
            break;
        case 1:
            apply_s(q);
            apply_z(q);
            apply_h(q);
            break;
        case 2:
            apply_h(q);
            apply_s(q);
            break;
        default:
            throw std::invalid_argument("gamma label must be 0, 1 or 2");
    }
}

void Tableau::apply(const Circuit &c) {
    for (const Gate &g : c.gates) {
        switch (g.kind) {
            case GateKind::H: apply_h(g.q); break;
            case GateKind::S: apply_s(g.q); break;
            case GateKind::Z: apply_z(g.q); break;
            case GateKind::X: apply_x(g.q); break;
            case GateKind::CX: apply_cx(g.q, g.q2); break;
            case GateKind::Gamma: apply_gamma(g.q, g.label); break;
            case GateKind::Measure:
                throw std::logic_error("use measure() for readout gates");
        }
    }
}

int Tableau::expectation(const GeneralPauli &p) const {
    if (p.n != n) throw std::invalid_argument("observable size mismatch");
    if (!p.is_hermitian()) throw std::invalid_argument("observable must be Hermitian");
    for (const GeneralPauli &s : stab)
        if (!s.commutes_with(p)) return 0;
    // p commutes with the whole (maximal) stabilizer group, so +-p is a group
    // element; destabilizer pairing picks out exactly the generators whose
    // product has p's support, and the accumulated phase fixes the sign.
    GeneralPauli acc = GeneralPauli::identity(n);
    for (uint32_t j = 0; j < n; ++j)
        if (!destab[j].commutes_with(p)) acc.mul_inplace(stab[j]);
    if (acc.x_mask != p.x_mask || acc.z_mask != p.z_mask)
        throw std::logic_error("tableau rows lost symplectic independence");
    return acc.sign() * p.sign();
}

int Tableau::measure(const GeneralPauli &p, Rng &rng) {
    if (p.n != n) throw std::invalid_argument("observable size mismatch");
    if (!p.is_hermitian()) throw std::invalid_argument("observable must be Hermitian");
    uint32_t k = n;
    for (uint32_t j = 0; j < n; ++j) {
        if (!stab[j].commutes_with(p)) {
            k = j;
            break;
        }
    }
    if (k == n) {
        // Deterministic: outcome is the group-membership sign, state unchanged.
        return expectation(p);
    }
    const int outcome = coin_pm1(rng);
    for (uint32_t j = 0; j < n; ++j) {
        if (j != k && !stab[j].commutes_with(p)) stab[j].mul_inplace(stab[k]);
        if (j != k && !destab[j].commutes_with(p)) destab[j].mul_inplace(stab[k]);
    }
    destab[k] = stab[k];
    stab[k] = p;
    if (outcome == -1) stab[k].negate();
    return outcome;
}

std::string Tableau::canonical_key() const {
    std::vector<GeneralPauli> rows = stab;
    size_t rank = 0;
    for (uint32_t col = 0; col < 2 * n && rank < rows.size(); ++col) {
        const bool x_pass = col < n;
        const uint64_t bit = 1ULL << (x_pass ? col : col - n);
        auto has = [&](const GeneralPauli &r) {
            return ((x_pass ? r.x_mask : r.z_mask) & bit) != 0;
        };
        size_t pivot = rank;
        while (pivot < rows.size() && !has(rows[pivot])) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (size_t j = 0; j < rows.size(); ++j)
            if (j != rank && has(rows[j])) rows[j].mul_inplace(rows[rank]);
        ++rank;
    }
    std::string key;
    for (const GeneralPauli &r : rows) {
        key += r.str();
        key.push_back(';');
    }
    return key;
}

// ---------------------------------------------------------------------------
// State construction and queries

StabilizerState build_state(const CircuitParams &params) {
    params.validate();
    StabilizerState s{params, Tableau::zero_state(params.n)};
    s.tab.apply(preparation_circuit(params));
    return s;
}

std::vector<PauliWord> deterministic_set(const Tableau &tab) {
    if (tab.n > 10) throw std::invalid_argument("full-weight enumeration supports n <= 10");
    std::vector<PauliWord> out;
    const uint64_t total = word_count(tab.n);
    for (uint64_t idx = 0; idx < total; ++idx) {
        PauliWord w = PauliWord::from_index(tab.n, idx);
        if (tab.expectation(GeneralPauli::from_word(w)) != 0) out.push_back(std::move(w));
    }
    return out;
}

int sample(const Tableau &tab, const GeneralPauli &obs, Rng &rng) {
    const int e = tab.expectation(obs);
    return e != 0 ? e : coin_pm1(rng);
}

SelectionStats selection_stats(const std::vector<const Tableau *> &states,
                               const GeneralPauli &obs) {
    if (states.empty()) throw std::invalid_argument("empty selection");
    SelectionStats st;
    for (const Tableau *t : states) {
        const int e = t->expectation(obs);
        if (e > 0)
            ++st.plus;
        else if (e < 0)
            ++st.minus;
        else
            ++st.unbiased;
    }
    const double total = static_cast<double>(states.size());
    const double toward_plus = (st.plus + 0.5 * st.unbiased) / total;
    const double toward_minus = (st.minus + 0.5 * st.unbiased) / total;
    if (st.plus > st.minus)
        st.majority_sign = +1;
    else if (st.minus > st.plus)
        st.majority_sign = -1;
    else
        st.majority_sign = 0;
    st.p_O = std::max(toward_plus, toward_minus);
    return st;
}

}  // namespace cqrac
