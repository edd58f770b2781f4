#include "orbifold/lattice.hpp"

#include "orbifold/errors.hpp"

namespace orbifold {

LatticeVector LatticeVector::operator+(const LatticeVector& o) const {
    return {x + o.x, xi + o.xi, {m[0] + o.m[0], m[1] + o.m[1]}, {s[0] + o.s[0], s[1] + o.s[1]}};
}

LatticeVector LatticeVector::operator*(const Int& k) const {
    return {x * k, xi * k, {m[0] * k, m[1] * k}, {s[0] * k, s[1] * k}};
}

bool LatticeVector::same(const LatticeVector& o, std::int64_t q) const {
    for (int i = 0; i < 2; ++i)
        if (mod(m[i] - o.m[i], q) != 0 || mod(s[i] - o.s[i], q) != 0) return false;
    return x == o.x && xi == o.xi;
}

CocycleExponent cocycle(const LatticeVector& u, const LatticeVector& v, std::int64_t q) {
    return {Rational(u.m[0] * v.s[0] + u.m[1] * v.s[1], Int(q)), u.x * v.xi};
}

Phase LatticeData::eps_commutator() const {
    auto h12 = cocycle(eps[0], eps[1], q()), h21 = cocycle(eps[1], eps[0], q());
    return h12.phase() * h21.phase().conj();
}

LatticeData build_lattices(const Convergent& conv, const FourSquare& fs, const PhaseSelection& ps) {
    if (!conv.above) throw DomainError("build_lattices needs theta > p/q; normalize the convergent first");
    if (conv.p != fs.p) throw DomainError("four-square decomposition does not match p");
    if (Int(ps.c) * conv.p + Int(ps.d) * conv.q != 1) throw DomainError("c p + d q != 1");
    switch (conv.beta_sq_enclosure.compare(1)) {
    case 1: break;
    case -1: throw ScopeError("q|q theta - p| >= 1: beta^2 <= 1, no Rieffel projection of this form");
    default: throw PrecisionExhausted("cannot decide q|q theta - p| < 1");
    }
    const std::int64_t q = conv.q;
    const Int p1 = fs[1], p2 = fs[2], p3 = fs[3], p4 = fs[4], c = ps.c, Q = q;
    LatticeData ld{conv, fs, ps, {}, {}, {}, {}, Rational(p1 * p3 + p2 * p4, Q), 0.0};
    ld.eps[0] = {1, 0, {p1, p2}, {p3, p4}};
    ld.eps[1] = {0, 1, {-p3, -p4}, {p1, p2}};
    ld.delta[0] = {1, 0, {-c * p1, -c * p2}, {-c * p3, -c * p4}};
    ld.delta[1] = {0, 1, {c * p3, c * p4}, {-c * p1, -c * p2}};
    ld.delta[2] = {0, 0, {p2, -p1}, {-p4, p3}};
    ld.delta[3] = {0, 0, {p4, -p3}, {p2, -p1}};
    ld.delta_prime[0] = {Q, 0, {0, 0}, {0, 0}};
    ld.delta_prime[1] = {0, Q, {0, 0}, {0, 0}};
    ld.delta_prime[2] = {-p1, p3, {1, 0}, {0, 0}};
    ld.delta_prime[3] = {-p2, p4, {0, 1}, {0, 0}};
    ld.delta_prime[4] = {-p3, -p1, {0, 0}, {1, 0}};
    ld.delta_prime[5] = {-p4, -p2, {0, 0}, {0, 1}};
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) ld.lam[j][k] = cocycle(ld.delta[j], ld.delta[k], q);
    ld.theta_prime = conv.beta_sq + static_cast<double>(ps.c) / static_cast<double>(q);
    return ld;
}

std::array<Int, 4> m_forms(const FourSquare& fs, std::int64_t c, const Int& n1, const Int& n2, const Int& n3,
                           const Int& n4) {
    const Int p1 = fs[1], p2 = fs[2], p3 = fs[3], p4 = fs[4], C = c;
    return {-C * p1 * n1 + C * p3 * n2 + p2 * n3 + p4 * n4,
            -C * p2 * n1 + C * p4 * n2 - p1 * n3 - p3 * n4,
            -C * p3 * n1 - C * p1 * n2 - p4 * n3 + p2 * n4,
            -C * p4 * n1 - C * p2 * n2 + p3 * n3 - p1 * n4};
}

std::array<std::int64_t, 4> m_coeffs(const LatticeData& ld, const Int& n1, const Int& n2, const Int& n3,
                                     const Int& n4) {
    auto f = m_forms(ld.fs, ld.ps.c, n1, n2, n3, n4);
    return {mod(f[0], ld.q()), mod(f[1], ld.q()), mod(f[2], ld.q()), mod(f[3], ld.q())};
}

RsCoeffs rs_coeffs(const FourSquare& fs, std::int64_t a_, std::int64_t b_, std::int64_t g_) {
    const Int p1 = fs[1], p2 = fs[2], p3 = fs[3], p4 = fs[4], a = a_, b = b_, g = g_;
    RsCoeffs rs;
    rs.r = {-p1 - 2 * g * p3 + b * p4, p2 + 2 * a * p4 - b * p3, p3 - 2 * g * p1 + b * p2,
            -p4 + 2 * a * p2 - b * p1};
    rs.s = {p1 - 2 * a * p3 - b * p4, p2 - 2 * g * p4 - b * p3, p3 + 2 * a * p1 + b * p2,
            p4 + 2 * g * p2 + b * p1};
    return rs;
}

DiophantineSolution solve_diophantine(const LatticeData& ld, const Int& u3, const Int& u4) {
    const std::int64_t q = ld.q();
    if (!ld.ps.coprime(q)) throw DomainError("gcd(Delta, q) > 1: the congruence system has no unique solution");
    DiophantineSolution ds;
    ds.rs = rs_coeffs(ld.fs, ld.ps);
    ds.u3 = u3;
    ds.u4 = u4;
    const auto& r = ds.rs.r;
    const auto& s = ds.rs.s;
    const Int Di = ld.ps.DeltaInv, c = ld.ps.c;
    ds.a1 = mod(c * Di * (r[0] * s[2] - r[1] * s[3]), q);
    ds.a2 = mod(c * Di * (r[0] * s[0] - r[1] * s[1]), q);
    ds.b1 = mod(c * Di * (r[3] * s[3] - r[2] * s[2]), q);
    ds.b2 = mod(c * Di * (r[3] * s[1] - r[2] * s[0]), q);
    ds.c3 = mod(Di * (-r[0] * u3 + r[1] * u4), q);
    ds.c4 = mod(Di * (-r[3] * u4 + r[2] * u3), q);
    return ds;
}

bool solution_satisfies_system(const LatticeData& ld, const DiophantineSolution& ds) {
    const std::int64_t q = ld.q();
    const Int a = ld.ps.a, b = ld.ps.b, g = ld.ps.gamma;
    // both congruences are affine in (n1, n2): three points decide them
    for (auto [n1, n2] : {std::pair<int, int>{0, 0}, {1, 0}, {0, 1}}) {
        auto [n3, n4] = ds.n34(n1, n2);
        auto m = m_forms(ld.fs, ld.ps.c, n1, n2, n3, n4);
        if (mod(m[2] + 2 * a * m[0] + b * m[1] + ds.u3, q) != 0) return false;
        if (mod(m[3] + 2 * g * m[1] + b * m[0] + ds.u4, q) != 0) return false;
    }
    return true;
}

Rational lambda_capital_exponent(const LatticeData& ld, const Int& n1, const Int& n2, const Int& n3,
                                 const Int& n4) {
    const Int Q = ld.q();
    auto r = [&](int j, int k) { return ld.lam[j - 1][k - 1].frac; };
    auto half = [&](const Int& n) { return Rational(n * (n + Q), Int(2)); };
    return r(1, 3) * Rational(n1 * n3) + r(2, 4) * Rational(n2 * n4) + r(1, 2) * Rational(n1 * n2) +
           r(3, 4) * Rational(n3 * n4) + r(1, 1) * half(n1) + r(2, 2) * half(n2) + r(3, 3) * half(n3) +
           r(4, 4) * half(n4);
}

Phase lambda_capital(const LatticeData& ld, const Int& n1, const Int& n2, const Int& n3, const Int& n4) {
    // only lambda_12 carries beta^2
    Int kappa = ld.lam[0][1].kappa * n1 * n2;
    return Phase(lambda_capital_exponent(ld, n1, n2, n3, n4), Rational(kappa));
}

std::array<Int, 4> t_values(const FourSquare& fs, TChoice t) {
    if (t == TChoice::Zero) return {0, 0, 0, 0};
    return {fs[1], fs[2], fs[3], fs[4]};
}

std::pair<Int, Int> u_values(const LatticeData& ld, TChoice t) {
    auto tj = t_values(ld.fs, t);
    const Int a = ld.ps.a, b = ld.ps.b, g = ld.ps.gamma;
    return {tj[2] + 2 * a * tj[0] + b * tj[1], tj[3] + 2 * g * tj[1] + b * tj[0]};
}

bool PhasePolynomial::congruences_hold(std::int64_t q) const {
    return mod(aP, q) == 0 && mod(bP, q) == 0 && mod(cP, q) == 0 && mod(d0P, q) == 0 && mod(e0P, q) == 0;
}

Rational PhasePolynomial::w1_phase(std::int64_t q) const {
    return Rational(aPP, Int(2)) + Rational(d1P, Int(2 * q));
}

Rational PhasePolynomial::w2_phase(std::int64_t q) const {
    return Rational(bPP, Int(2)) + Rational(e1P, Int(2 * q));
}

PhasePolynomial phase_polynomial(const LatticeData& ld, const DiophantineSolution& ds, TChoice t) {
    auto [u3, u4] = u_values(ld, t);
    if (u3 != ds.u3 || u4 != ds.u4) throw DomainError("diophantine solution was built for another t_choice");
    const auto tj = t_values(ld.fs, t);
    const Int t1 = tj[0], t2 = tj[1], t3 = tj[2], t4 = tj[3];
    const Int p1 = ld.fs[1], p2 = ld.fs[2], p3 = ld.fs[3], p4 = ld.fs[4];
    const Int p = ld.p(), q = ld.q();
    const Int a = ld.ps.a, b = ld.ps.b, g = ld.ps.gamma, c = ld.ps.c;
    const Int c3 = ds.c3, c4 = ds.c4, a1 = ds.a1, a2 = ds.a2, b1 = ds.b1, b2 = ds.b2;
    const Int C = p1 * p4 - p2 * p3;
    const Int P12 = p1 * p1 + p2 * p2;
    const Int P = p1 * p3 + p2 * p4;

    const Int d0 = t1 + p2 * c3 + p4 * c4, d1 = -c * p1 + p2 * a1 + p4 * b1, d2 = c * p3 + p2 * a2 + p4 * b2;
    const Int e0 = t2 - p1 * c3 - p3 * c4, e1 = -c * p2 - p1 * a1 - p3 * b1, e2 = c * p4 - p1 * a2 - p3 * b2;

    PhasePolynomial pp;
    pp.t_choice = t;
    pp.d_coeffs = {d0, d1, d2};
    pp.e_coeffs = {e0, e1, e2};
    pp.aP = 2 * a * d1 * d1 + 2 * b * d1 * e1 + 2 * g * e1 * e1 + 2 * c * C * a1 + 2 * P12 * a1 * b1 +
            P * (c * c - a1 * a1 + b1 * b1) - p * a1 * b1;
    pp.bP = 2 * a * d2 * d2 + 2 * b * d2 * e2 + 2 * g * e2 * e2 - 2 * c * C * b2 + 2 * P12 * a2 * b2 +
            P * (-c * c - a2 * a2 + b2 * b2) - p * a2 * b2;
    pp.cP = 2 * a * d1 * d2 + b * (d1 * e2 + d2 * e1) + 2 * g * e1 * e2 + c * C * (a2 - b1) +
            P12 * (c * c + a1 * b2 + a2 * b1) + P * (b1 * b2 - a1 * a2) - p * a2 * b1;
    pp.dP = 2 * t3 * d1 + 2 * t4 * e1 + 4 * a * d0 * d1 + 2 * b * (d0 * e1 + d1 * e0) + 4 * g * e0 * e1 +
            2 * c * C * c3 + 2 * P12 * (c3 * b1 + c4 * a1) +
            P * (q * c * c - (c3 * a1 + a1 * (c3 + q)) + (c4 * b1 + b1 * (c4 + q))) - 2 * p * c3 * b1 +
            p * a1 * b1;
    pp.eP = 2 * t3 * d2 + 2 * t4 * e2 + 4 * a * d0 * d2 + 2 * b * (d0 * e2 + d2 * e0) + 4 * g * e0 * e2 -
            2 * c * C * c4 + 2 * P12 * (c3 * b2 + c4 * a2) +
            P * (-q * c * c - (c3 * a2 + a2 * (c3 + q)) + (c4 * b2 + b2 * (c4 + q))) - 2 * p * c3 * b2 +
            p * a2 * b2;
    pp.K = -2 * t3 * t1 - 2 * t4 * t2 + 2 * t3 * d0 + 2 * t4 * e0 + 2 * a * d0 * d0 + 2 * b * d0 * e0 +
           2 * g * e0 * e0 + 2 * P12 * c3 * c4 + P * (-c3 * (c3 + q) + c4 * (c4 + q));
    pp.d0P = t3 * d1 + t4 * e1 + 2 * a * d0 * d1 + b * (d0 * e1 + d1 * e0) + 2 * g * e0 * e1 + c * C * c3 +
             P12 * (c3 * b1 + c4 * a1) + P * (b1 * c4 - a1 * c3) - p * c3 * b1;
    pp.e0P = t3 * d2 + t4 * e2 + 2 * a * d0 * d2 + b * (d0 * e2 + d2 * e0) + 2 * g * e0 * e2 - c * C * c4 +
             P12 * (c3 * b2 + c4 * a2) + P * (b2 * c4 - c3 * a2) - p * c3 * b2;
    pp.d1P = P * (q * c * c - a1 * q + b1 * q) + p * a1 * b1;
    pp.e1P = P * (-q * c * c - a2 * q + b2 * q) + p * a2 * b2;
    pp.aPP = floor_div(pp.aP, q);
    pp.bPP = floor_div(pp.bP, q);
    return pp;
}

Int x_commutator_residue(const LatticeData& ld, const DiophantineSolution& ds) {
    const Int c = ld.ps.c, p = ld.p();
    return c * c * p + p * (Int(ds.a1) * ds.b2 - Int(ds.a2) * ds.b1);
}

}  // namespace orbifold
