#pragma once

#include <cstdint>

#include "orbifold/certificate.hpp"
#include "orbifold/lattice.hpp"
#include "orbifold/ncseries.hpp"

namespace orbifold {

inline constexpr int kDefaultCutoff = 12;

CertificateInputs inputs_of(const LatticeData& ld);

// <f,f>_{D-perp} = sum e^{-pi/2 beta^2 (m^2+n^2)} e(beta^2 mn/2) W2^n W1^m, |m|,|n| <= cutoff
NCSeries series_ff(const LatticeData& ld, int cutoff = kDefaultCutoff);

// <f, U1 f>_{D-perp} = mu0^{1/2} e(K/2q) V4^c4 V3^c3 * series
struct FU1FSeries {
    NCSeries series;  // e^{-pi/2[(alpha+beta m)^2 + beta^2 n^2]} e(beta^2 mn/2) e(-n/2q)
    std::int64_t c3 = 0, c4 = 0;
    Int K = 0;
    Rational mu0;
    double mu0_sqrt = 0;
    Phase prefactor;  // e(K/2q)
};
FU1FSeries series_fU1f(const LatticeData& ld, const DiophantineSolution& ds, const PhasePolynomial& pp,
                       int cutoff = kDefaultCutoff);

// mu_{qm,qn} = (-1)^{q(p1p3+p2p4)(n^2-m^2)}
int mu_sign(const LatticeData& ld, long m, long n);

// X = <f,f>_D = (1/beta^2) sum e(q^2 alpha^2 mn/2) e^{-pi/2 q^2 alpha^2 (m^2+n^2)} mu U2^{qn} U1^{qm}
NCSeries primitive_form(const LatticeData& ld, int cutoff = kDefaultCutoff);

// Raw invertibility bound C < 1, with ||<f,f>^{-1}|| <= ||rho0^{-1}||^2/(1-C).
// beta^2 <= 1 is refused with ScopeError.
Certificate invertibility_certificate(double beta_sq, double tol = 1e-15);
Certificate invertibility_certificate(const LatticeData& ld, double tol = 1e-15);

// ||U1 X U1^* - X|| through the l1 chain and its closed-form majorant, against 12 pi/q.
Certificate centrality_certificate(const LatticeData& ld, double tol = 1e-15);

// Rate constant of the box sum: sum e^{-pi/2(m^2+n^2)}[(1/2+|m|) e^{pi(1/2+|m|)} + |n|].
double cutdown_rate_constant();

// ||B - b^{-2}|| split four ways at N, the conjugation bound, and the exact congruences
// behind nu1 = 1, nu2 = e(1/q). A failing congruence throws std::logic_error.
Certificate cutdown_certificate(const LatticeData& ld, const DiophantineSolution& ds, const PhasePolynomial& pp,
                                int cutoff = kDefaultCutoff, int N = 4, double tol = 1e-15);

struct TraceReport {
    double trace = 0;         // q|q theta - p| = 1/beta^2
    double unit = 0;          // |q theta - p|, trace of a minimal subprojection
    double one_minus = 0;     // tau(1 - e)
    double sub(std::int64_t k) const { return k * unit; }
};
TraceReport trace_report(const LatticeData& ld);
Certificate trace_certificate(const LatticeData& ld);

// Scalarity of <phi,phi>_{D0-perp}, decided exactly; sampled for q > 60, skipped above 2000.
Certificate scalarity_certificate(const LatticeData& ld);
// Phase-polynomial congruences in both t choices and the X1, X2 commutation.
Certificate congruence_certificate(const LatticeData& ld);
// W0 unitarity, sigma0'(W0) = W0^*, phi^ = phi W0; skipped for q > 64.
Certificate w0_certificate(const LatticeData& ld);

}  // namespace orbifold
