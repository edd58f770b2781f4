#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "orbifold/exact.hpp"
#include "orbifold/number_theory.hpp"

namespace orbifold {

using CMatrix = Eigen::MatrixXcd;

// f : Z_q x Z_q -> C, stored row-major in (n, m).
struct CyclicFunction {
    std::int64_t q = 1;
    std::vector<cplx> values;

    explicit CyclicFunction(std::int64_t q_ = 1);
    cplx& at(std::int64_t n, std::int64_t m) { return values[mod(n, q) * q + mod(m, q)]; }
    const cplx& at(std::int64_t n, std::int64_t m) const { return values[mod(n, q) * q + mod(m, q)]; }
    double norm() const;
    double distance(const CyclicFunction& o) const;  // sup norm of the difference
};

// phi(n,m) = e((a n^2 + b n m + gamma m^2)/q), divided by q when normalized.
CyclicFunction gaussian_phi(const PhaseSelection& ps, std::int64_t q, bool normalized = true);

// f^(s,t) = (1/q) sum e(-(ns + mt)/q) f(n,m)
CyclicFunction dft2(const CyclicFunction& f);

// Element (m; s) of Z_q^2 x Z_q^2 acting by (pi f)(n) = e(n.s/q) f(n+m).
struct FiniteElement {
    std::array<std::int64_t, 2> m{}, s{};
};
CyclicFunction pi_apply(const FiniteElement& x, const CyclicFunction& f);
CyclicFunction pi_adjoint_apply(const FiniteElement& x, const CyclicFunction& f);
CMatrix heisenberg_matrix(const FiniteElement& x, std::int64_t q);  // q^2 x q^2

// D0 = Z eps1 + Z eps2 and D0-perp = Z delta3 + Z delta4, reduced to the finite layer.
FiniteElement d0_element(const FourSquare& fs, std::int64_t q, std::int64_t m, std::int64_t n);
FiniteElement d0perp_element(const FourSquare& fs, std::int64_t q, std::int64_t k, std::int64_t l);

// sum_{k,l} coeff(k,l) pi*_{y(k,l)}, y(k,l) = k delta3 + l delta4. Coefficients live in the
// pi* basis; word_coeffs() rewrites them on the words V4^l V3^k.
struct D0PerpOperator {
    std::int64_t q = 1;
    FourSquare fs;
    std::vector<cplx> coeffs;

    D0PerpOperator() = default;
    D0PerpOperator(std::int64_t q_, FourSquare fs_);
    cplx& coeff(std::int64_t k, std::int64_t l) { return coeffs[mod(k, q) * q + mod(l, q)]; }
    const cplx& coeff(std::int64_t k, std::int64_t l) const { return coeffs[mod(k, q) * q + mod(l, q)]; }
    std::vector<cplx> word_coeffs() const;
    double off_origin_max() const;  // max |coeff(k,l)| over (k,l) != (0,0)
    double distance(const D0PerpOperator& o) const;
};

// sum_{m,n} coeff(m,n) pi_{m eps1 + n eps2}
struct D0Operator {
    std::int64_t q = 1;
    FourSquare fs;
    std::vector<cplx> coeffs;
    cplx& coeff(std::int64_t m, std::int64_t n) { return coeffs[mod(m, q) * q + mod(n, q)]; }
    const cplx& coeff(std::int64_t m, std::int64_t n) const { return coeffs[mod(m, q) * q + mod(n, q)]; }
};

// coefficient at y: sum_n conj(f(n)) (pi_y g)(n)
D0PerpOperator inner_D0perp(const CyclicFunction& f, const CyclicFunction& g, const FourSquare& fs);
// coefficient at x: sum_n f(n) conj((pi_x g)(n))
D0Operator inner_D0(const CyclicFunction& f, const CyclicFunction& g, const FourSquare& fs);

// f . a = sum coeff(k,l) pi*_{y(k,l)} f
CyclicFunction apply_right(const CyclicFunction& f, const D0PerpOperator& a);
CyclicFunction apply_left(const D0Operator& a, const CyclicFunction& f);

// pi*_{y(k,l)} = Lambda(k,l) V4^l V3^k for 0 <= k,l < q
Phase word_phase(const FourSquare& fs, std::int64_t q, std::int64_t k, std::int64_t l);
D0PerpOperator v3(const FourSquare& fs, std::int64_t q);
D0PerpOperator v4(const FourSquare& fs, std::int64_t q);

D0PerpOperator sigma0_prime(const D0PerpOperator& a);
D0PerpOperator adjoint(const D0PerpOperator& a);

// V3 -> clock diag(e(pk/q)), V4 -> shift e_k -> e_{k+1}
std::pair<CMatrix, CMatrix> clock_shift_rep(std::int64_t q, std::int64_t p);
CMatrix to_matrix(const D0PerpOperator& a);             // q x q
CMatrix to_heisenberg_matrix(const D0PerpOperator& a);  // q^2 x q^2
CMatrix to_heisenberg_matrix(const D0Operator& a);

// W0 = <phi, phi^>; phi must satisfy <phi,phi> = 1 to 1e-9.
D0PerpOperator w0(const CyclicFunction& phi, const FourSquare& fs);

struct W0Report {
    std::int64_t q = 0;
    double unitarity = 0;      // ||W0 W0* - I|| in the clock-shift picture
    double sigma_adjoint = 0;  // ||sigma0'(W0) - W0*||
    double intertwining = 0;   // ||phi^ - phi W0||
};
W0Report w0_report(const FourSquare& fs, const PhaseSelection& ps, std::int64_t q);

// <phi,phi>_{D0-perp} for the unnormalized Gaussian, with every coefficient decided exactly:
// the exponent histogram over Z_q is reduced modulo the q-th cyclotomic polynomial.
struct ExactInner {
    std::int64_t q = 0;
    std::vector<std::vector<std::int64_t>> histogram;  // per (k,l), counts of exponent r mod q
    std::vector<bool> zero;                            // per (k,l)
    bool scalar() const;                               // zero off (0,0)
    std::int64_t coeff00() const;                      // q^2 exactly
};
ExactInner inner_D0perp_exact(const PhaseSelection& ps, const FourSquare& fs, std::int64_t q);
// One coefficient: histogram of exponents, and whether the root-of-unity sum vanishes.
std::pair<std::vector<std::int64_t>, bool> exact_coefficient(const PhaseSelection& ps, const FourSquare& fs,
                                                             std::int64_t q, std::int64_t k, std::int64_t l);

// Integer coefficients of Phi_q, constant term first.
std::vector<std::int64_t> cyclotomic(std::int64_t q);

}  // namespace orbifold
