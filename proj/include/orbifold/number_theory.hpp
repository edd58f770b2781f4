#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "orbifold/exact.hpp"
#include "orbifold/theta_source.hpp"

namespace orbifold {

struct Convergent {
    ThetaSource theta;
    std::int64_t p = 0;
    std::int64_t q = 1;
    bool above = true;        // theta > p/q
    bool normalized = false;  // theta was replaced by 1 - theta and p by q - p
    OpenInterval gap;         // |theta - p/q|
    OpenInterval beta_sq_enclosure;
    double alpha = 0.0;
    double beta = 0.0;
    double beta_sq = 0.0;

    // q|q theta - p| as a double (the trace of the projection)
    double qgap() const { return 1.0 / beta_sq; }
    // theta -> 1 - theta, p -> q - p when theta < p/q
    Convergent normalize() const;
};

Convergent make_convergent(const ThetaSource& theta, std::int64_t p, std::int64_t q);

// p_0/q_0 = a_0/1 first.
std::vector<Convergent> convergents(const ThetaSource& theta, std::size_t count);

// (|theta - p/q| < 1/q^2, q|q theta - p| < 1), decided exactly.
std::pair<bool, bool> check_approximation(const ThetaSource& theta, std::int64_t p, std::int64_t q);

// CF of a positive rational p/q, with both admissible endings available.
std::vector<Int> cf_of_rational(std::int64_t p, std::int64_t q, bool even_length);

struct FourSquare {
    std::int64_t p = 0;
    std::array<std::int64_t, 4> pj{};  // p1 >= p2 >= p3 >= p4 >= 0

    std::int64_t operator[](int j) const { return pj[j - 1]; }  // 1-based, as written
};

FourSquare four_square(std::int64_t p);

struct AbcTriple {
    Int A, B, C;
};

AbcTriple abc(const FourSquare& fs);

std::int64_t radical(std::int64_t n);
std::vector<std::int64_t> prime_divisors(std::int64_t n);

enum class WitnessSearch { Smallest, Constructive };

// gcd(p + k r, q) = 1
std::int64_t coprime_shift(const Int& p, const Int& r, std::int64_t q,
                           WitnessSearch how = WitnessSearch::Smallest);
// gcd(k X + (k^2 - 1) Y, Z) = 1
std::int64_t quadratic_coprime(const Int& X, const Int& Y, std::int64_t Z,
                               WitnessSearch how = WitnessSearch::Smallest);

struct PhaseSelection {
    std::int64_t a = 0, b = 0, gamma = 0;
    Int Delta;
    std::int64_t DeltaInv = 0;  // 0 when gcd(Delta, q) > 1
    std::int64_t c = 0, d = 0;  // c p + d q = 1
    std::int64_t k = 0;         // branch parameter (0 for overrides)
    bool overridden = false;

    bool coprime(std::int64_t q) const { return gcd(Delta, Int(q)) == 1; }
};

Int delta_formula(const AbcTriple& t, std::int64_t a, std::int64_t b, std::int64_t gamma);
std::pair<std::int64_t, std::int64_t> bezout(std::int64_t p, std::int64_t q);

PhaseSelection select_phase(const FourSquare& fs, std::int64_t q,
                            WitnessSearch how = WitnessSearch::Smallest);
// Arbitrary (a, b, gamma), used for negative controls.
PhaseSelection phase_from_abc(const FourSquare& fs, std::int64_t q, std::int64_t a, std::int64_t b,
                              std::int64_t gamma);

struct GdeltaHit {
    std::size_t n = 0;
    Int p, q;
    OpenInterval beta_sq;
    double beta_sq_value = 0.0;
    Rational lower, upper;  // 1 + 1/(M+1), 1 + 1/M + 1/N
    bool satisfied = false;
};

// Positions n >= 1 with (a_n, a_{n+1}, a_{n+2}) = (N, 1, M) among the first
// `scan_length` coefficients, each with the window condition decided exactly.
std::vector<GdeltaHit> gdelta_scan(const ThetaSource& theta, std::int64_t N, std::int64_t M,
                                   std::size_t scan_length = 64);

}  // namespace orbifold
