#pragma once

#include <array>
#include <cstdint>

#include "orbifold/exact.hpp"
#include "orbifold/number_theory.hpp"

namespace orbifold {

// Element (x, [m1], [m2]; xi, [s1], [s2]) of G = M x M^ with M = R x Z_q x Z_q.
// Real slots are integer multiples of a unit (alpha on D, beta on D-perp);
// the Z_q slots keep integer representatives so half-power exponents stay exact.
struct LatticeVector {
    Int x = 0, xi = 0;
    std::array<Int, 2> m{0, 0}, s{0, 0};

    LatticeVector operator+(const LatticeVector& o) const;
    LatticeVector operator*(const Int& k) const;
    // equal as elements of G (Z_q slots compared mod q)
    bool same(const LatticeVector& o, std::int64_t q) const;
};

// h(u, v) = e(u.x * v.xi * unit^2) e((u.m . v.s) / q), unreduced.
struct CocycleExponent {
    Rational frac;  // (u.m . v.s) / q
    Int kappa;      // multiple of unit^2
    Phase phase() const { return Phase(frac, Rational(kappa)); }
};
CocycleExponent cocycle(const LatticeVector& u, const LatticeVector& v, std::int64_t q);

struct LatticeData {
    Convergent conv;
    FourSquare fs;
    PhaseSelection ps;
    std::array<LatticeVector, 2> eps;          // basis of D, unit alpha
    std::array<LatticeVector, 4> delta;        // basis of D-perp, unit beta
    std::array<LatticeVector, 6> delta_prime;  // dependent generators of D-perp
    std::array<std::array<CocycleExponent, 4>, 4> lam;  // lam[j][k] = h(delta_{j+1}, delta_{k+1})
    Rational mu0;        // (p1p3 + p2p4)/q
    double theta_prime;  // (c theta + d)/(q theta - p) = beta^2 + c/q

    std::int64_t p() const { return fs.p; }
    std::int64_t q() const { return conv.q; }
    Phase lambda(int j, int k) const { return lam[j - 1][k - 1].phase(); }  // 1-based
    // pi_eps1 pi_eps2 pi_eps1^* pi_eps2^* = e(alpha^2 + p/q), kappa in units of alpha^2
    Phase eps_commutator() const;
};

LatticeData build_lattices(const Convergent& conv, const FourSquare& fs, const PhaseSelection& ps);

// m_j(n1..n4), reduced mod q.
std::array<std::int64_t, 4> m_coeffs(const LatticeData& ld, const Int& n1, const Int& n2, const Int& n3,
                                     const Int& n4);
// Same forms, unreduced.
std::array<Int, 4> m_forms(const FourSquare& fs, std::int64_t c, const Int& n1, const Int& n2, const Int& n3,
                           const Int& n4);

struct RsCoeffs {
    std::array<Int, 4> r, s;  // r[0] = r1, ...
    Int det_r() const { return r[0] * r[3] - r[1] * r[2]; }
    Int det_s() const { return s[0] * s[3] - s[1] * s[2]; }
};
RsCoeffs rs_coeffs(const FourSquare& fs, std::int64_t a, std::int64_t b, std::int64_t gamma);
inline RsCoeffs rs_coeffs(const FourSquare& fs, const PhaseSelection& ps) {
    return rs_coeffs(fs, ps.a, ps.b, ps.gamma);
}

struct DiophantineSolution {
    std::int64_t c3 = 0, c4 = 0, a1 = 0, a2 = 0, b1 = 0, b2 = 0;  // in [0, q)
    RsCoeffs rs;
    Int u3 = 0, u4 = 0;

    // n3 = c3 + a1 n1 + a2 n2, n4 = c4 + b1 n1 + b2 n2 (unreduced)
    std::pair<Int, Int> n34(const Int& n1, const Int& n2) const {
        return {c3 + a1 * n1 + a2 * n2, c4 + b1 * n1 + b2 * n2};
    }
};

// Unique mod-q solution of the (n3, n4) congruence system; needs gcd(Delta, q) = 1.
DiophantineSolution solve_diophantine(const LatticeData& ld, const Int& u3, const Int& u4);

// The system holds identically in (n1, n2) mod q for the solution.
bool solution_satisfies_system(const LatticeData& ld, const DiophantineSolution& ds);

// Lambda_{n1 n2 n3 n4}; kappa counts beta^2.
Phase lambda_capital(const LatticeData& ld, const Int& n1, const Int& n2, const Int& n3, const Int& n4);
// Unreduced rational part of the exponent (denominator divides 2q).
Rational lambda_capital_exponent(const LatticeData& ld, const Int& n1, const Int& n2, const Int& n3,
                                 const Int& n4);

enum class TChoice { Zero, Eps1 };

// t_j and the resulting (u3, u4)
std::array<Int, 4> t_values(const FourSquare& fs, TChoice t);
std::pair<Int, Int> u_values(const LatticeData& ld, TChoice t);

struct PhasePolynomial {
    TChoice t_choice = TChoice::Zero;
    Int aP, bP, cP, dP, eP, K;
    Int d0P, e0P, d1P, e1P;
    Int aPP, bPP;  // a'/q, b'/q (exact when the congruences hold)
    std::array<Int, 3> d_coeffs, e_coeffs;  // d0, d1, d2 and e0, e1, e2 of the d, e quadratics

    Int S(const Int& n1, const Int& n2) const {
        return aP * n1 * n1 + bP * n2 * n2 + 2 * cP * n1 * n2 + dP * n1 + eP * n2 + K;
    }
    bool congruences_hold(std::int64_t q) const;
    // exponents of the scalars in W1 = e(w1) X1 and W2 = e(w2) X2
    Rational w1_phase(std::int64_t q) const;
    Rational w2_phase(std::int64_t q) const;
};

PhasePolynomial phase_polynomial(const LatticeData& ld, const DiophantineSolution& ds, TChoice t);

// Exponent of the commutation scalar of X1, X2 beyond e(beta^2), times q:
// c^2 p + p(a1 b2 - a2 b1); vanishes mod q when X1 X2 = e(beta^2) X2 X1.
Int x_commutator_residue(const LatticeData& ld, const DiophantineSolution& ds);

}  // namespace orbifold
