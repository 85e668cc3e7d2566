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

#include "cqrac/sweep2q.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "cqrac/contexts.hpp"
#include "cqrac/pauli.hpp"
#include "cqrac/rng.hpp"
#include "cqrac/sampling.hpp"

namespace cqrac {

namespace {

using cd = std::complex<double>;
using Mat2 = std::array<std::array<cd, 2>, 2>;
using Mat4 = std::array<std::array<cd, 4>, 4>;

Mat2 mul2(const Mat2 &a, const Mat2 &b) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 2; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

Mat4 mul4(const Mat4 &a, const Mat4 &b) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < 4; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

Mat4 dagger4(const Mat4 &a) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = std::conj(a[j][i]);
    return r;
}

// Basis index b encodes qubit 1 in bit 0 and qubit 2 in bit 1, matching the
// amplitude convention of the state-vector simulator.
Mat4 kron(const Mat2 &on_q1, const Mat2 &on_q2) {
    Mat4 r{};
    for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
            r[b][c] = on_q1[b & 1][c & 1] * on_q2[(b >> 1) & 1][(c >> 1) & 1];
    return r;
}

Mat2 rz(double a) {
    const cd lo = std::polar(1.0, -a / 2.0), hi = std::polar(1.0, a / 2.0);
    return Mat2{{{lo, cd{0, 0}}, {cd{0, 0}, hi}}};
}

Mat2 rx(double a) {
    const cd c{std::cos(a / 2.0), 0.0};
    const cd s{0.0, -std::sin(a / 2.0)};
    return Mat2{{{c, s}, {s, c}}};
}

// Generic single-qubit rotation used by the sweep: Euler angles around the
// z axis conjugated into the x-y plane.
Mat2 u_gate(double theta, double phi) {
    return mul2(rz(phi), mul2(rx(-M_PI / 2.0), mul2(rz(theta), rx(M_PI / 2.0))));
}

const Mat2 kPauliX{{{cd{0, 0}, cd{1, 0}}, {cd{1, 0}, cd{0, 0}}}};
const Mat2 kPauliY{{{cd{0, 0}, cd{0, -1}}, {cd{0, 1}, cd{0, 0}}}};
const Mat2 kPauliZ{{{cd{1, 0}, cd{0, 0}}, {cd{0, 0}, cd{-1, 0}}}};

const Mat2 &pauli_matrix(Letter l) {
    switch (l) {
        case Letter::X: return kPauliX;
        case Letter::Y: return kPauliY;
        default: return kPauliZ;
    }
}

const std::array<Mat4, 9> &word_matrices() {
    static const std::array<Mat4, 9> table = [] {
        std::array<Mat4, 9> t{};
        for (uint64_t w = 0; w < 9; ++w) {
            const PauliWord word = PauliWord::from_index(2, w);
            t[w] = kron(pauli_matrix(word.letter(1)), pauli_matrix(word.letter(2)));
        }
        return t;
    }();
    return table;
}

void sandwich(Mat4 &rho, const Mat4 &u) { rho = mul4(mul4(u, rho), dagger4(u)); }

// rho <- (1 - x) rho + x X_q rho X_q. Conjugation by X_q permutes basis
// indices by toggling the qubit's bit.
void apply_rnot(Mat4 &rho, int qubit_bit, double x) {
    Mat4 flipped{};
    for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
            flipped[b ^ (1 << qubit_bit)][c ^ (1 << qubit_bit)] = rho[b][c];
    for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
            rho[b][c] = (1.0 - x) * rho[b][c] + x * flipped[b][c];
}

void apply_cnot(Mat4 &rho) {
    // Control qubit 1 (bit 0), target qubit 2 (bit 1): swap basis states 1 and 3.
    auto permute = [](int b) { return (b & 1) ? b ^ 2 : b; };
    Mat4 out{};
    for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) out[permute(b)][permute(c)] = rho[b][c];
    rho = out;
}

double real_trace_product(const Mat4 &rho, const Mat4 &p) {
    cd tr{0, 0};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) tr += rho[i][j] * p[j][i];
    return tr.real();
}

constexpr double kConfidence = 0.95;
constexpr double kCap = 1e4;

struct SampleSummary {
    int config_id;
    double avg_smix;
};

SampleSummary summarize(const TwoQubitSample &s) {
    int config = 0;
    double total = 0.0;
    for (int k = 0; k < 9; ++k) {
        const double e = s.expectations[k];
        if (e >= 0.0) config |= 1 << k;
        const double p = 0.5 * (1.0 + std::min(std::abs(e), 1.0));
        total += sampling_requirement_exact_capped(p, kConfidence, kCap);
    }
    return {config, total / 9.0};
}

RestrictionLabel label_of(int config) {
    std::array<int8_t, 9> signs{};
    for (int k = 0; k < 9; ++k)
        signs[static_cast<size_t>(k)] = (config >> k) & 1 ? int8_t{1} : int8_t{-1};
    return classify_signs(signs);
}

}  // namespace

TwoQubitSample sweep_sample(uint64_t seed, uint64_t index) {
    Rng rng = make_rng(derive_seed(seed, index));
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const double x1 = unit(rng);
    const double x2 = unit(rng);
    std::array<Mat2, 4> u;
    for (auto &g : u) {
        const double theta = M_PI * unit(rng);
        const double phi = 2.0 * M_PI * unit(rng);
        g = u_gate(theta, phi);
    }

    Mat4 rho{};
    rho[0][0] = cd{1, 0};
    apply_rnot(rho, 0, x1);
    apply_rnot(rho, 1, x2);
    sandwich(rho, kron(u[0], u[1]));
    apply_cnot(rho);
    sandwich(rho, kron(u[2], u[3]));

    TwoQubitSample out{};
    const auto &words = word_matrices();
    for (int k = 0; k < 9; ++k)
        out.expectations[static_cast<size_t>(k)] =
            real_trace_product(rho, words[static_cast<size_t>(k)]);
    return out;
}

SweepResult sweep_2q(uint64_t samples, uint64_t seed, unsigned threads) {
    if (threads == 0) {
        threads = std::thread::hardware_concurrency();
        if (threads == 0) threads = 1;
    }
    if (samples < threads) threads = samples > 0 ? static_cast<unsigned>(samples) : 1;

    struct Accum {
        std::array<uint64_t, 512> occurrences{};
        std::array<double, 512> min_smix{};
        Accum() { min_smix.fill(kCap + 1.0); }
    };
    std::vector<Accum> partial(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            Accum &acc = partial[t];
            for (uint64_t i = t; i < samples; i += threads) {
                const SampleSummary s = summarize(sweep_sample(seed, i));
                const auto id = static_cast<size_t>(s.config_id);
                ++acc.occurrences[id];
                acc.min_smix[id] = std::min(acc.min_smix[id], s.avg_smix);
            }
        });
    }
    for (auto &th : pool) th.join();

    SweepResult result;
    result.samples = samples;
    result.seed = seed;
    for (int id = 0; id < 512; ++id) {
        SweepRow &row = result.rows[static_cast<size_t>(id)];
        row.config_id = id;
        double best = kCap + 1.0;
        for (const Accum &acc : partial) {
            row.occurrences += acc.occurrences[static_cast<size_t>(id)];
            best = std::min(best, acc.min_smix[static_cast<size_t>(id)]);
        }
        row.min_avg_smix = row.occurrences > 0 ? best : 0.0;
        const RestrictionLabel label = label_of(id);
        row.restrictions = label.satisfied;
        row.star = label.star;
    }
    return result;
}

std::string sweep_csv(const SweepResult &result) {
    std::string out = "config_id,occurrences,min_avg_Smix,restrictions,star\n";
    char buf[96];
    for (const SweepRow &row : result.rows) {
        if (row.occurrences > 0) {
            std::snprintf(buf, sizeof buf, "%d,%llu,%.6f,%d,%d\n", row.config_id,
                          static_cast<unsigned long long>(row.occurrences),
                          row.min_avg_smix, row.restrictions, row.star ? 1 : 0);
        } else {
            std::snprintf(buf, sizeof buf, "%d,0,,%d,%d\n", row.config_id,
                          row.restrictions, row.star ? 1 : 0);
        }
        out += buf;
    }
    return out;
}

}  // namespace cqrac
