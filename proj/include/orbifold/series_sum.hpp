#pragma once

#include "orbifold/errors.hpp"

namespace orbifold {

// Sum of f(k), k >= 0, given a majorant m(k) >= |f(k)| whose ratio m(k+1)/m(k) is
// nonincreasing. Stops once the geometric tail bound drops below tol/16; the bound
// is written to *tail_out.
template <class F, class M>
double tail_controlled_sum(F f, M m, double tol, double* tail_out = nullptr) {
    constexpr int kMaxTerms = 10'000'000;
    double sum = 0;
    for (int k = 0; k < kMaxTerms; ++k) {
        sum += f(k);
        double next = m(k + 1);
        double r = next == 0 ? 0 : m(k + 2) / next;
        if (next == 0 || (r < 1 && next / (1 - r) < tol / 16)) {
            if (tail_out) *tail_out = next == 0 ? 0 : next / (1 - r);
            return sum;
        }
    }
    throw PrecisionExhausted("series did not reach the requested tolerance");
}

// Bound on sum_{k >= k0} m(k) for a majorant with nonincreasing ratio, assuming m(k0+1)/m(k0) < 1.
template <class M>
double geometric_tail(M m, long k0) {
    double a = m(k0);
    if (a == 0) return 0;
    double r = m(k0 + 1) / a;
    if (!(r < 1)) throw DomainError("tail majorant is not decreasing");
    return a / (1 - r);
}

}  // namespace orbifold
