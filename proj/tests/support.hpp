#pragma once

#include <cstdint>
#include <numeric>
#include <random>

#include "orbifold/number_theory.hpp"

namespace support {

using orbifold::Int;
using orbifold::ThetaSource;

inline ThetaSource sqrt2m1() { return ThetaSource::periodic({0}, {2}); }
inline ThetaSource golden() { return ThetaSource::periodic({0}, {1}); }

// An irrational theta with p/q as an even-index convergent (so theta > p/q),
// tail [3;3,3,...] keeps q|q theta - p| below 1/3.
inline ThetaSource theta_above(std::int64_t p, std::int64_t q) {
    return ThetaSource::periodic(orbifold::cf_of_rational(p, q, false), {3});
}

struct Instance {
    orbifold::Convergent conv;
    orbifold::FourSquare fs;
    orbifold::PhaseSelection ps;
};

inline Instance instance(std::int64_t p, std::int64_t q) {
    auto conv = orbifold::make_convergent(theta_above(p, q), p, q);
    auto fs = orbifold::four_square(p);
    return {conv, fs, orbifold::select_phase(fs, q)};
}

// random coprime (p, q) with 1 <= q <= qmax, 0 <= p <= pmax (p = 0 only for q = 1)
inline std::pair<std::int64_t, std::int64_t> coprime_pair(std::mt19937_64& rng, std::int64_t pmax,
                                                          std::int64_t qmax) {
    std::uniform_int_distribution<std::int64_t> dp(1, pmax), dq(1, qmax);
    for (;;) {
        std::int64_t p = dp(rng), q = dq(rng);
        if (std::gcd(p, q) == 1) return {p, q};
    }
}

}  // namespace support
