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

#include "cqrac/sampling.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <stdexcept>

namespace cqrac {

double majority_probability(int64_t shots, double p) {
    if (shots < 1) throw std::domain_error("shots must be positive");
    if (p < 0.0 || p > 1.0) throw std::domain_error("p must lie in [0, 1]");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    // Strict majority: X >= floor(shots / 2) + 1 for X ~ Binomial(shots, p);
    // the binomial survival function is the regularized incomplete beta.
    const int64_t need = shots / 2 + 1;
    return boost::math::ibeta(static_cast<double>(need),
                              static_cast<double>(shots - need + 1), p);
}

int64_t sampling_requirement_exact(double p, double f) {
    if (f <= 0.0 || f >= 1.0) throw std::domain_error("f must lie in (0, 1)");
    if (p <= 0.5 || p > 1.0)
        throw std::domain_error("majority requirement diverges for p <= 1/2");
    if (p == 1.0) return 1;
    if (majority_probability(1, p) > f) return 1;
    // Exponential growth over odd counts, then binary search on the smallest
    // odd count that clears f (majority success is monotone over odd counts).
    int64_t lo = 1, hi = 3;
    while (majority_probability(hi, p) <= f) {
        lo = hi;
        hi = 2 * hi + 1;
        if (hi > (int64_t{1} << 40))
            throw std::domain_error("requirement overflow; p too close to 1/2");
    }
    while (hi - lo > 2) {
        const int64_t mid = lo + (((hi - lo) / 2) & ~int64_t{1});  // odd midpoint
        if (majority_probability(mid, p) > f)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double sampling_requirement_exact_capped(double p, double f, double cap) {
    if (p <= 0.5) return cap;
    if (p == 1.0) return 1.0;
    // Cheap screen: the requirement exceeds the cap whenever the largest odd
    // count within the cap still fails.
    const auto limit = static_cast<int64_t>(cap);
    const int64_t largest_odd = (limit % 2 == 0) ? limit - 1 : limit;
    if (largest_odd >= 1 && majority_probability(largest_odd, p) <= f) return cap;
    const int64_t s = sampling_requirement_exact(p, f);
    return s > limit ? cap : static_cast<double>(s);
}

double normal_prefactor(double f) {
    if (f <= 0.0 || f >= 1.0) throw std::domain_error("f must lie in (0, 1)");
    const double z = boost::math::erf_inv(2.0 * f - 1.0);
    return 2.0 * z * z;
}

double sampling_requirement_normal(double p, double f) {
    if (p <= 0.5 || p > 1.0)
        throw std::domain_error("majority requirement diverges for p <= 1/2");
    const double d = p - 0.5;
    return normal_prefactor(f) * p * (1.0 - p) / (d * d);
}

double sampling_requirement_metric(double p, double u) {
    if (p < 0.0 || p > 1.0) throw std::domain_error("p must lie in [0, 1]");
    if (p <= 0.5) return u;
    const double d = p - 0.5;
    return std::min(u, p * (1.0 - p) / (d * d));
}

}  // namespace cqrac
