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

#include "cqrac/pauli.hpp"

#include <bit>

namespace cqrac {

char letter_to_char(Letter l) {
    switch (l) {
        case Letter::X:
            return 'X';
        case Letter::Y:
            return 'Y';
        case Letter::Z:
            return 'Z';
    }
    throw std::logic_error("bad letter");
}

Letter letter_from_char(char c) {
    switch (c) {
        case 'X':
        case 'x':
            return Letter::X;
        case 'Y':
        case 'y':
            return Letter::Y;
        case 'Z':
        case 'z':
            return Letter::Z;
        default:
            throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
    }
}

uint64_t word_count(uint32_t n) {
    if (n > 40) {
        throw std::invalid_argument("word_count: n too large for 64-bit indexing");
    }
    uint64_t c = 1;
    for (uint32_t i = 0; i < n; i++) {
        c *= 3;
    }
    return c;
}

PauliWord PauliWord::from_index(uint32_t n, uint64_t index) {
    if (n == 0) {
        throw std::invalid_argument("PauliWord: n must be positive");
    }
    if (index >= word_count(n)) {
        throw std::out_of_range("PauliWord: index out of range");
    }
    PauliWord w;
    w.n = n;
    w.letters.resize(n);
    for (uint32_t q = n; q-- > 0;) {
        w.letters[q] = static_cast<Letter>(index % 3);
        index /= 3;
    }
    return w;
}

PauliWord PauliWord::from_string(std::string_view s) {
    if (s.empty()) {
        throw std::invalid_argument("PauliWord: empty string");
    }
    PauliWord w;
    w.n = static_cast<uint32_t>(s.size());
    w.letters.reserve(s.size());
    for (char c : s) {
        w.letters.push_back(letter_from_char(c));
    }
    return w;
}

uint64_t PauliWord::index() const {
    uint64_t idx = 0;
    for (Letter l : letters) {
        idx = idx * 3 + static_cast<uint64_t>(l);
    }
    return idx;
}

std::string PauliWord::str() const {
    std::string s;
    s.reserve(n);
    for (Letter l : letters) {
        s.push_back(letter_to_char(l));
    }
    return s;
}

bool PauliWord::commutes_with(const PauliWord &other) const {
    if (n != other.n) {
        throw std::invalid_argument("PauliWord: size mismatch");
    }
    uint32_t diff = 0;
    for (uint32_t q = 0; q < n; q++) {
        diff += letters[q] != other.letters[q];
    }
    return (diff & 1) == 0;
}

GeneralPauli GeneralPauli::identity(uint32_t n) {
    if (n == 0 || n > 64) {
        throw std::invalid_argument("GeneralPauli: n must be in [1, 64]");
    }
    GeneralPauli p;
    p.n = n;
    return p;
}

GeneralPauli GeneralPauli::from_word(const PauliWord &w) {
    GeneralPauli p = identity(w.n);
    for (uint32_t q = 0; q < w.n; q++) {
        uint64_t bit = uint64_t{1} << q;
        switch (w.letters[q]) {
            case Letter::X:
                p.x_mask |= bit;
                break;
            case Letter::Y:
                // Y = i * X * Z, so each Y contributes one power of i on top
                // of the canonical X-then-Z product.
                p.x_mask |= bit;
                p.z_mask |= bit;
                p.phase_exp = static_cast<uint8_t>((p.phase_exp + 1) & 3);
                break;
            case Letter::Z:
                p.z_mask |= bit;
                break;
        }
    }
    return p;
}

GeneralPauli GeneralPauli::multiplied_by(const GeneralPauli &rhs) const {
    GeneralPauli out = *this;
    out.mul_inplace(rhs);
    return out;
}

void GeneralPauli::mul_inplace(const GeneralPauli &rhs) {
    if (n != rhs.n) {
        throw std::invalid_argument("GeneralPauli: size mismatch");
    }
    // Commuting the left factor's Z components past the right factor's X
    // components produces one factor of -1 per overlapping qubit.
    uint32_t swaps = static_cast<uint32_t>(std::popcount(z_mask & rhs.x_mask));
    phase_exp = static_cast<uint8_t>((phase_exp + rhs.phase_exp + 2 * swaps) & 3);
    x_mask ^= rhs.x_mask;
    z_mask ^= rhs.z_mask;
}

bool GeneralPauli::commutes_with(const GeneralPauli &other) const {
    if (n != other.n) {
        throw std::invalid_argument("GeneralPauli: size mismatch");
    }
    uint32_t anti = static_cast<uint32_t>(std::popcount(x_mask & other.z_mask)) +
                    static_cast<uint32_t>(std::popcount(z_mask & other.x_mask));
    return (anti & 1) == 0;
}

uint32_t GeneralPauli::y_count() const {
    return static_cast<uint32_t>(std::popcount(x_mask & z_mask));
}

bool GeneralPauli::is_full_weight() const {
    uint64_t support = x_mask | z_mask;
    uint64_t all = n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
    return support == all;
}

bool GeneralPauli::is_hermitian() const {
    return ((phase_exp ^ y_count()) & 1) == 0;
}

int GeneralPauli::sign() const {
    uint32_t d = (phase_exp + 4u - (y_count() & 3u)) & 3u;
    if (d == 0) {
        return +1;
    }
    if (d == 2) {
        return -1;
    }
    throw std::logic_error("GeneralPauli::sign: operator is not Hermitian");
}

PauliWord GeneralPauli::word() const {
    if (!is_full_weight()) {
        throw std::logic_error("GeneralPauli::word: operator has identity components");
    }
    PauliWord w;
    w.n = n;
    w.letters.resize(n);
    for (uint32_t q = 0; q < n; q++) {
        bool x = (x_mask >> q) & 1;
        bool z = (z_mask >> q) & 1;
        w.letters[q] = x ? (z ? Letter::Y : Letter::X) : Letter::Z;
    }
    return w;
}

uint64_t GeneralPauli::word_index() const {
    return word().index();
}

std::string GeneralPauli::str() const {
    static const char *prefix[4] = {"+", "+i", "-", "-i"};
    uint32_t d = (phase_exp + 4u - (y_count() & 3u)) & 3u;
    std::string s = prefix[d];
    for (uint32_t q = 0; q < n; q++) {
        bool x = (x_mask >> q) & 1;
        bool z = (z_mask >> q) & 1;
        s.push_back(x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I'));
    }
    return s;
}

}  // namespace cqrac
