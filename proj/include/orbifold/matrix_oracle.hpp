#pragma once

#include <cstdint>
#include <vector>

#include "orbifold/certificate.hpp"
#include "orbifold/lattice.hpp"

namespace orbifold {

struct SpectralReport {
    std::int64_t r = 0, s = 1;  // rho = r/s in lowest terms
    std::int64_t dimension = 0;
    int cutoff = 0;
    double min_eigenvalue = 0;
    double max_eigenvalue = 0;
    double hermiticity_residual = 0;
    double tail_budget = 0;  // dropped l1 mass plus rounding allowance
    bool pass = false;

    double rho() const { return double(r) / double(s); }
};

// sum_{|m|,|n|<=cutoff} e^{-pi/2 rho(m^2+n^2)} e(rho mn/2) U^n V^m in the s x s clock/shift
// representation with VU = e(r/s) UV. rho <= 1 is refused with ScopeError.
SpectralReport theorem64_spectral_check(std::int64_t r, std::int64_t s, int cutoff = 10);
Certificate spectral_certificate(const SpectralReport& rep);

// The same sum at rho = 1 with U = V = -1.
double scalar_probe(int cutoff = 20);

struct DiophantineOracle {
    std::int64_t q = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;  // (n1, n2) sampled
    std::vector<std::int64_t> solution_counts;
    bool unique = false;
    bool agrees = false;  // every unique solution equals solve_diophantine
};

// Enumerates (n3, n4) in Z_q^2 for every (n1, n2) when q <= 12, otherwise for a fixed sample.
DiophantineOracle brute_force_diophantine(const LatticeData& ld, const Int& u3, const Int& u4,
                                          std::int64_t max_q = 50);

struct ProjectionProbe {
    std::int64_t q = 0, p = 0;
    double residual = 0;  // ||<phi,phi>_{D0} - I|| on L^2(Z_q^2)
    double trace = 0;     // normalized trace, 1 for the identity
};
ProjectionProbe finite_projection_probe(std::int64_t q, std::int64_t p, const PhaseSelection& ps);

}  // namespace orbifold
