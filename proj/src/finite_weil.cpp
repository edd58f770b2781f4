#include "orbifold/finite_weil.hpp"

#include <algorithm>
#include <numeric>

#include "orbifold/errors.hpp"

namespace orbifold {

namespace {

void require_q(std::int64_t q) {
    if (q < 1) throw DomainError("q must be positive");
}

void same_q(std::int64_t a, std::int64_t b) {
    if (a != b) throw DomainError("cyclic functions on different Z_q");
}

cplx e_frac(std::int64_t num, std::int64_t q) { return e(static_cast<double>(mod(num, q)) / static_cast<double>(q)); }

cplx e_rational(const Rational& r) { return e(frac(r).convert_to<double>()); }

std::int64_t ms_dot(const FiniteElement& x) { return x.m[0] * x.s[0] + x.m[1] * x.s[1]; }

}  // namespace

CyclicFunction::CyclicFunction(std::int64_t q_) : q(q_) {
    require_q(q_);
    values.assign(q * q, 0.0);
}

double CyclicFunction::norm() const {
    double s = 0;
    for (const auto& v : values) s += std::norm(v);
    return std::sqrt(s);
}

double CyclicFunction::distance(const CyclicFunction& o) const {
    same_q(q, o.q);
    double d = 0;
    for (std::size_t i = 0; i < values.size(); ++i) d = std::max(d, std::abs(values[i] - o.values[i]));
    return d;
}

CyclicFunction gaussian_phi(const PhaseSelection& ps, std::int64_t q, bool normalized) {
    CyclicFunction f(q);
    const Int a = ps.a, b = ps.b, g = ps.gamma;
    for (std::int64_t n = 0; n < q; ++n)
        for (std::int64_t m = 0; m < q; ++m) {
            std::int64_t ex = mod(a * n * n + b * n * m + g * m * m, q);
            f.at(n, m) = e_frac(ex, q) / (normalized ? static_cast<double>(q) : 1.0);
        }
    return f;
}

CyclicFunction dft2(const CyclicFunction& f) {
    const std::int64_t q = f.q;
    CyclicFunction out(q);
    // separable: transform along m, then along n
    std::vector<cplx> tw(q);
    for (std::int64_t j = 0; j < q; ++j) tw[j] = e_frac(-j, q);
    CyclicFunction mid(q);
    for (std::int64_t n = 0; n < q; ++n)
        for (std::int64_t t = 0; t < q; ++t) {
            cplx s = 0;
            for (std::int64_t m = 0; m < q; ++m) s += tw[(m * t) % q] * f.at(n, m);
            mid.at(n, t) = s;
        }
    for (std::int64_t s_ = 0; s_ < q; ++s_)
        for (std::int64_t t = 0; t < q; ++t) {
            cplx s = 0;
            for (std::int64_t n = 0; n < q; ++n) s += tw[(n * s_) % q] * mid.at(n, t);
            out.at(s_, t) = s / static_cast<double>(q);
        }
    return out;
}

CyclicFunction pi_apply(const FiniteElement& x, const CyclicFunction& f) {
    const std::int64_t q = f.q;
    CyclicFunction g(q);
    for (std::int64_t n1 = 0; n1 < q; ++n1)
        for (std::int64_t n2 = 0; n2 < q; ++n2)
            g.at(n1, n2) = e_frac(n1 * x.s[0] + n2 * x.s[1], q) * f.at(n1 + x.m[0], n2 + x.m[1]);
    return g;
}

CyclicFunction pi_adjoint_apply(const FiniteElement& x, const CyclicFunction& f) {
    const std::int64_t q = f.q;
    CyclicFunction g(q);
    for (std::int64_t n1 = 0; n1 < q; ++n1)
        for (std::int64_t n2 = 0; n2 < q; ++n2)
            g.at(n1, n2) = e_frac(-((n1 - x.m[0]) * x.s[0] + (n2 - x.m[1]) * x.s[1]), q) *
                           f.at(n1 - x.m[0], n2 - x.m[1]);
    return g;
}

CMatrix heisenberg_matrix(const FiniteElement& x, std::int64_t q) {
    require_q(q);
    CMatrix M = CMatrix::Zero(q * q, q * q);
    for (std::int64_t n1 = 0; n1 < q; ++n1)
        for (std::int64_t n2 = 0; n2 < q; ++n2)
            M(n1 * q + n2, mod(n1 + x.m[0], q) * q + mod(n2 + x.m[1], q)) = e_frac(n1 * x.s[0] + n2 * x.s[1], q);
    return M;
}

FiniteElement d0_element(const FourSquare& fs, std::int64_t q, std::int64_t m, std::int64_t n) {
    const auto& p = fs.pj;
    FiniteElement x;
    x.m = {mod(m * p[0] - n * p[2], q), mod(m * p[1] - n * p[3], q)};
    x.s = {mod(m * p[2] + n * p[0], q), mod(m * p[3] + n * p[1], q)};
    return x;
}

FiniteElement d0perp_element(const FourSquare& fs, std::int64_t q, std::int64_t k, std::int64_t l) {
    const auto& p = fs.pj;
    FiniteElement y;
    y.m = {mod(p[1] * k + p[3] * l, q), mod(-p[0] * k - p[2] * l, q)};
    y.s = {mod(-p[3] * k + p[1] * l, q), mod(p[2] * k - p[0] * l, q)};
    return y;
}

D0PerpOperator::D0PerpOperator(std::int64_t q_, FourSquare fs_) : q(q_), fs(std::move(fs_)) {
    require_q(q_);
    coeffs.assign(q * q, 0.0);
}

std::vector<cplx> D0PerpOperator::word_coeffs() const {
    std::vector<cplx> out(q * q);
    for (std::int64_t k = 0; k < q; ++k)
        for (std::int64_t l = 0; l < q; ++l) out[k * q + l] = coeff(k, l) * e_rational(word_phase(fs, q, k, l).fraction());
    return out;
}

double D0PerpOperator::off_origin_max() const {
    double m = 0;
    for (std::size_t i = 1; i < coeffs.size(); ++i) m = std::max(m, std::abs(coeffs[i]));
    return m;
}

double D0PerpOperator::distance(const D0PerpOperator& o) const {
    same_q(q, o.q);
    double d = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) d = std::max(d, std::abs(coeffs[i] - o.coeffs[i]));
    return d;
}

D0PerpOperator inner_D0perp(const CyclicFunction& f, const CyclicFunction& g, const FourSquare& fs) {
    same_q(f.q, g.q);
    const std::int64_t q = f.q;
    D0PerpOperator out(q, fs);
    for (std::int64_t k = 0; k < q; ++k)
        for (std::int64_t l = 0; l < q; ++l) {
            auto pg = pi_apply(d0perp_element(fs, q, k, l), g);
            cplx s = 0;
            for (std::size_t i = 0; i < pg.values.size(); ++i) s += std::conj(f.values[i]) * pg.values[i];
            out.coeff(k, l) = s;
        }
    return out;
}

D0Operator inner_D0(const CyclicFunction& f, const CyclicFunction& g, const FourSquare& fs) {
    same_q(f.q, g.q);
    const std::int64_t q = f.q;
    D0Operator out{q, fs, std::vector<cplx>(q * q)};
    for (std::int64_t m = 0; m < q; ++m)
        for (std::int64_t n = 0; n < q; ++n) {
            auto pg = pi_apply(d0_element(fs, q, m, n), g);
            cplx s = 0;
            for (std::size_t i = 0; i < pg.values.size(); ++i) s += f.values[i] * std::conj(pg.values[i]);
            out.coeff(m, n) = s;
        }
    return out;
}

CyclicFunction apply_right(const CyclicFunction& f, const D0PerpOperator& a) {
    same_q(f.q, a.q);
    CyclicFunction out(f.q);
    for (std::int64_t k = 0; k < a.q; ++k)
        for (std::int64_t l = 0; l < a.q; ++l) {
            cplx c = a.coeff(k, l);
            if (c == cplx(0)) continue;
            auto g = pi_adjoint_apply(d0perp_element(a.fs, a.q, k, l), f);
            for (std::size_t i = 0; i < g.values.size(); ++i) out.values[i] += c * g.values[i];
        }
    return out;
}

CyclicFunction apply_left(const D0Operator& a, const CyclicFunction& f) {
    same_q(f.q, a.q);
    CyclicFunction out(f.q);
    for (std::int64_t m = 0; m < a.q; ++m)
        for (std::int64_t n = 0; n < a.q; ++n) {
            cplx c = a.coeff(m, n);
            if (c == cplx(0)) continue;
            auto g = pi_apply(d0_element(a.fs, a.q, m, n), f);
            for (std::size_t i = 0; i < g.values.size(); ++i) out.values[i] += c * g.values[i];
        }
    return out;
}

Phase word_phase(const FourSquare& fs, std::int64_t q, std::int64_t k_in, std::int64_t l_in) {
    // raw cocycle exponents r33 = -P/q, r44 = P/q, r34 = (p1^2+p2^2)/q, with half powers
    // r33 k(k+q)/2 and r44 l(l+q)/2 taken on the representatives in [0, q)
    const auto& p = fs.pj;
    const Int P = Int(p[0]) * p[2] + Int(p[1]) * p[3];
    const Int Q12 = Int(p[0]) * p[0] + Int(p[1]) * p[1];
    const Int k = mod(k_in, q), l = mod(l_in, q);
    Rational ex = Rational(Q12 * k * l, Int(q)) + Rational(-P * k * (k + q), Int(2 * q)) + Rational(P * l * (l + q), Int(2 * q));
    return Phase(ex);
}

D0PerpOperator v3(const FourSquare& fs, std::int64_t q) {
    D0PerpOperator a(q, fs);
    const Int P = Int(fs.pj[0]) * fs.pj[2] + Int(fs.pj[1]) * fs.pj[3];
    a.coeff(1 % q, 0) += e_rational(Rational(P * (q + 1), Int(2 * q)));  // e(-r33 (q+1)/2)
    return a;
}

D0PerpOperator v4(const FourSquare& fs, std::int64_t q) {
    D0PerpOperator a(q, fs);
    const Int P = Int(fs.pj[0]) * fs.pj[2] + Int(fs.pj[1]) * fs.pj[3];
    a.coeff(0, 1 % q) += e_rational(Rational(-P * (q + 1), Int(2 * q)));  // e(-r44 (q+1)/2)
    return a;
}

D0PerpOperator sigma0_prime(const D0PerpOperator& a) {
    // sigma0'(pi*_y) = h(y,y) pi*_{R0 y}, R0 y(k,l) = y(-l,k)
    D0PerpOperator out(a.q, a.fs);
    for (std::int64_t k = 0; k < a.q; ++k)
        for (std::int64_t l = 0; l < a.q; ++l) {
            auto y = d0perp_element(a.fs, a.q, k, l);
            out.coeff(-l, k) += a.coeff(k, l) * e_frac(ms_dot(y), a.q);
        }
    return out;
}

D0PerpOperator adjoint(const D0PerpOperator& a) {
    // (pi*_y)* = pi_y = e(-m.s/q) pi*_{-y}
    D0PerpOperator out(a.q, a.fs);
    for (std::int64_t k = 0; k < a.q; ++k)
        for (std::int64_t l = 0; l < a.q; ++l) {
            auto y = d0perp_element(a.fs, a.q, k, l);
            out.coeff(-k, -l) += std::conj(a.coeff(k, l)) * e_frac(-ms_dot(y), a.q);
        }
    return out;
}

std::pair<CMatrix, CMatrix> clock_shift_rep(std::int64_t q, std::int64_t p) {
    require_q(q);
    if (std::gcd(p, q) != 1) throw DomainError("clock_shift_rep needs gcd(p, q) = 1");
    CMatrix C = CMatrix::Zero(q, q), S = CMatrix::Zero(q, q);
    for (std::int64_t k = 0; k < q; ++k) {
        C(k, k) = e_frac(p * k, q);
        S((k + 1) % q, k) = 1.0;
    }
    return {C, S};
}

CMatrix to_matrix(const D0PerpOperator& a) {
    auto [C, S] = clock_shift_rep(a.q, a.fs.p);
    auto words = a.word_coeffs();
    CMatrix out = CMatrix::Zero(a.q, a.q);
    CMatrix Sl = CMatrix::Identity(a.q, a.q);
    for (std::int64_t l = 0; l < a.q; ++l) {
        CMatrix SlCk = Sl;
        for (std::int64_t k = 0; k < a.q; ++k) {
            out += words[k * a.q + l] * SlCk;
            SlCk = SlCk * C;
        }
        Sl = S * Sl;
    }
    return out;
}

CMatrix to_heisenberg_matrix(const D0PerpOperator& a) {
    CMatrix out = CMatrix::Zero(a.q * a.q, a.q * a.q);
    for (std::int64_t k = 0; k < a.q; ++k)
        for (std::int64_t l = 0; l < a.q; ++l)
            if (a.coeff(k, l) != cplx(0)) out += a.coeff(k, l) * heisenberg_matrix(d0perp_element(a.fs, a.q, k, l), a.q).adjoint();
    return out;
}

CMatrix to_heisenberg_matrix(const D0Operator& a) {
    CMatrix out = CMatrix::Zero(a.q * a.q, a.q * a.q);
    for (std::int64_t m = 0; m < a.q; ++m)
        for (std::int64_t n = 0; n < a.q; ++n)
            if (a.coeff(m, n) != cplx(0)) out += a.coeff(m, n) * heisenberg_matrix(d0_element(a.fs, a.q, m, n), a.q);
    return out;
}

D0PerpOperator w0(const CyclicFunction& phi, const FourSquare& fs) {
    auto n = inner_D0perp(phi, phi, fs);
    if (std::abs(n.coeff(0, 0) - 1.0) > 1e-9 || n.off_origin_max() > 1e-9)
        throw DomainError("w0 needs <phi, phi> = 1 over D0-perp");
    return inner_D0perp(phi, dft2(phi), fs);
}

W0Report w0_report(const FourSquare& fs, const PhaseSelection& ps, std::int64_t q) {
    auto phi = gaussian_phi(ps, q);
    auto W = w0(phi, fs);
    W0Report r;
    r.q = q;
    CMatrix M = to_matrix(W);
    r.unitarity = (M * M.adjoint() - CMatrix::Identity(q, q)).cwiseAbs().maxCoeff();
    r.sigma_adjoint = (to_matrix(sigma0_prime(W)) - M.adjoint()).cwiseAbs().maxCoeff();
    r.intertwining = dft2(phi).distance(apply_right(phi, W));
    return r;
}

bool ExactInner::scalar() const {
    for (std::size_t i = 1; i < zero.size(); ++i)
        if (!zero[i]) return false;
    return !zero.empty() && !zero[0];
}

std::int64_t ExactInner::coeff00() const { return histogram.empty() ? 0 : histogram[0][0]; }

std::vector<std::int64_t> cyclotomic(std::int64_t q) {
    require_q(q);
    // x^q - 1 divided by Phi_d for every proper divisor d
    std::vector<std::int64_t> num(q + 1, 0);
    num[0] = -1;
    num[q] = 1;
    for (std::int64_t d = 1; d < q; ++d) {
        if (q % d) continue;
        auto den = cyclotomic(d);
        std::vector<std::int64_t> quo(num.size() - den.size() + 1, 0);
        for (std::int64_t i = static_cast<std::int64_t>(quo.size()) - 1; i >= 0; --i) {
            std::int64_t c = num[i + den.size() - 1];  // den is monic
            quo[i] = c;
            for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
        }
        num = quo;
    }
    return num;
}

std::pair<std::vector<std::int64_t>, bool> exact_coefficient(const PhaseSelection& ps, const FourSquare& fs,
                                                             std::int64_t q, std::int64_t k, std::int64_t l) {
    require_q(q);
    if (q > 2'000'000) throw DomainError("exact coefficient: q too large");
    const auto phi_q = cyclotomic(q);
    const std::size_t deg = phi_q.size() - 1;
    // all operands reduced mod q, so every product stays below 8 q^3
    const std::int64_t a = mod(ps.a, q), b = mod(ps.b, q), g = mod(ps.gamma, q);
    auto Q = [&](std::int64_t x, std::int64_t y) { return mod(mod(a * x, q) * x + mod(b * x, q) * y + mod(g * y, q) * y, q); };
    auto y = d0perp_element(fs, q, k, l);
    std::vector<std::int64_t> h(q, 0);
    for (std::int64_t n1 = 0; n1 < q; ++n1)
        for (std::int64_t n2 = 0; n2 < q; ++n2) {
            std::int64_t ex = Q((n1 + y.m[0]) % q, (n2 + y.m[1]) % q) - Q(n1, n2) + n1 * y.s[0] + n2 * y.s[1];
            ++h[mod(ex, q)];
        }
    // reduce sum h[r] x^r modulo the monic Phi_q
    std::vector<std::int64_t> r = h;
    for (std::int64_t i = q - 1; i >= static_cast<std::int64_t>(deg); --i) {
        std::int64_t c = r[i];
        if (!c) continue;
        for (std::size_t j = 0; j <= deg; ++j) r[i - deg + j] -= c * phi_q[j];
    }
    bool z = std::all_of(r.begin(), r.end(), [](std::int64_t v) { return v == 0; });
    return {std::move(h), z};
}

ExactInner inner_D0perp_exact(const PhaseSelection& ps, const FourSquare& fs, std::int64_t q) {
    require_q(q);
    ExactInner out;
    out.q = q;
    for (std::int64_t k = 0; k < q; ++k)
        for (std::int64_t l = 0; l < q; ++l) {
            auto [h, z] = exact_coefficient(ps, fs, q, k, l);
            out.histogram.push_back(std::move(h));
            out.zero.push_back(z);
        }
    return out;
}

}  // namespace orbifold
