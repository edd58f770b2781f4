#include "orbifold/number_theory.hpp"

#include <cmath>
#include <numeric>

#include "orbifold/errors.hpp"

namespace orbifold {

namespace {

std::int64_t isqrt(std::int64_t n) {
    if (n <= 0) return 0;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::int64_t isqrt_ceil(std::int64_t n) {
    std::int64_t r = isqrt(n);
    return r * r == n ? r : r + 1;
}

OpenInterval invert_scaled(const OpenInterval& g, const Rational& s) {
    // 1 / (s * g) for 0 < g; unbounded above when g.lo = 0
    if (g.lo == 0) return {1 / (s * g.hi), 0, true};
    return {1 / (s * g.hi), 1 / (s * g.lo)};
}

}  // namespace

Convergent make_convergent(const ThetaSource& theta, std::int64_t p, std::int64_t q) {
    if (q < 1 || p < 0) throw DomainError("convergent needs q >= 1 and p >= 0");
    if (std::gcd(p, q) != 1) throw DomainError("p/q must be in lowest terms");
    if (p == 0 && q != 1) throw DomainError("p = 0 requires q = 1");
    Convergent c;
    c.theta = theta;
    c.p = p;
    c.q = q;
    OpenInterval g = theta.separate(Rational(p, q));
    c.above = g.lo >= 0;
    c.gap = c.above ? g : OpenInterval{-g.hi, -g.lo};
    Rational q2(Int(q) * q);
    c.beta_sq_enclosure = invert_scaled(c.gap, q2);
    Rational gm = c.gap.mid();
    double a2 = gm.convert_to<double>();
    c.alpha = std::sqrt(a2);
    c.beta_sq = Rational(1 / (q2 * gm)).convert_to<double>();
    c.beta = std::sqrt(c.beta_sq);
    return c;
}

Convergent Convergent::normalize() const {
    if (above) return *this;
    Convergent c = make_convergent(theta.complement(), q - p, q);
    c.normalized = true;
    return c;
}

std::vector<Convergent> convergents(const ThetaSource& theta, std::size_t count) {
    auto a = theta.coefficients(count);
    std::vector<Convergent> out;
    Int p0 = 1, q0 = 0, p1 = a[0], q1 = 1;
    for (std::size_t i = 0; i < count; ++i) {
        if (i > 0) {
            Int p2 = a[i] * p1 + p0, q2 = a[i] * q1 + q0;
            p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        }
        out.push_back(make_convergent(theta, narrow(p1, "p_n"), narrow(q1, "q_n")));
    }
    return out;
}

std::pair<bool, bool> check_approximation(const ThetaSource& theta, std::int64_t p, std::int64_t q) {
    if (q < 1) throw DomainError("q must be positive");
    if (std::gcd(p, q) != 1) throw DomainError("p/q must be in lowest terms");
    OpenInterval g = theta.separate(Rational(p, q), 8);
    OpenInterval absg = g.lo >= 0 ? g : OpenInterval{-g.hi, -g.lo};
    Rational qq{Int(q)};
    Rational bound(Int(1), Int(q) * q);
    auto decide = [](int cmp, const char* what) {
        if (cmp == 0) throw PrecisionExhausted(std::string("undecidable: ") + what);
        return cmp < 0;
    };
    bool eq21 = decide(absg.compare(bound), "|theta - p/q| < 1/q^2");
    OpenInterval scaled{qq * qq * absg.lo, qq * qq * absg.hi};  // q|q theta - p|
    bool covol = decide(scaled.compare(1), "q|q theta - p| < 1");
    return {eq21, covol};
}

std::vector<Int> cf_of_rational(std::int64_t p, std::int64_t q, bool even_length) {
    if (q < 1 || p < 0) throw DomainError("cf_of_rational needs p >= 0, q >= 1");
    std::vector<Int> out;
    std::int64_t a = p, b = q;
    while (b != 0) {
        out.push_back(a / b);
        std::int64_t r = a % b;
        a = b;
        b = r;
    }
    bool even = out.size() % 2 == 0;
    if (even != even_length) {
        if (out.size() > 1 && out.back() > 1) {
            out.back() -= 1;
            out.push_back(1);
        } else if (out.size() > 1) {
            out.pop_back();
            out.back() += 1;
        } else {
            // [a0] -> [a0 - 1; 1] needs a0 >= 1
            if (out[0] < 1) throw DomainError("no alternate CF for 0");
            out[0] -= 1;
            out.push_back(1);
        }
    }
    return out;
}

FourSquare four_square(std::int64_t p) {
    if (p < 0) throw DomainError("four_square needs p >= 0");
    for (std::int64_t p1 = isqrt_ceil((p + 3) / 4); p1 * p1 <= p; ++p1) {
        std::int64_t r1 = p - p1 * p1;
        for (std::int64_t p2 = isqrt_ceil((r1 + 2) / 3); p2 <= p1 && p2 * p2 <= r1; ++p2) {
            std::int64_t r2 = r1 - p2 * p2;
            for (std::int64_t p3 = isqrt_ceil((r2 + 1) / 2); p3 <= p2 && p3 * p3 <= r2; ++p3) {
                std::int64_t r3 = r2 - p3 * p3;
                std::int64_t p4 = isqrt(r3);
                if (p4 * p4 == r3 && p4 <= p3) return {p, {p1, p2, p3, p4}};
            }
        }
    }
    if (p == 0) return {0, {0, 0, 0, 0}};
    throw DomainError("four_square search failed");  // unreachable by Lagrange
}

AbcTriple abc(const FourSquare& fs) {
    Int p1 = fs[1], p2 = fs[2], p3 = fs[3], p4 = fs[4];
    return {p1 * p1 - p2 * p2 + p3 * p3 - p4 * p4, p1 * p2 + p3 * p4, p1 * p4 - p2 * p3};
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
    n = n < 0 ? -n : n;
    std::vector<std::int64_t> out;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::int64_t radical(std::int64_t n) {
    std::int64_t r = 1;
    for (auto t : prime_divisors(n)) r *= t;
    return r;
}

std::int64_t coprime_shift(const Int& p, const Int& r, std::int64_t q, WitnessSearch how) {
    if (q < 1) throw DomainError("coprime_shift needs q >= 1");
    if (gcd(gcd(p, r), Int(q)) != 1) throw DomainError("coprime_shift needs gcd(p, r, q) = 1");
    std::int64_t k = 0;
    if (how == WitnessSearch::Smallest) {
        std::int64_t bound = radical(q);
        for (k = 0; k < bound; ++k)
            if (gcd(p + r * k, Int(q)) == 1) break;
    } else {
        std::vector<std::int64_t> ts, ks;
        for (auto t : prime_divisors(q)) {
            std::int64_t rt = mod(r, t);
            if (rt == 0) continue;
            ts.push_back(t);
            ks.push_back(mod(-Int(mod(p, t)) * inverse_mod(rt, t), t));
        }
        if (!ts.empty()) {
            Int kk = ks[0] + 1;
            if (ts.size() > 1) {
                Int prod = 1;
                for (std::size_t j = 1; j < ts.size(); ++j) {
                    std::int64_t dj = std::gcd(mod(ks[0] - ks[j], ts[j]), ts[j]);
                    prod *= ts[j] / dj;
                }
                kk = ks[0] + prod;
            }
            k = narrow(kk, "coprime_shift witness");
        }
    }
    if (gcd(p + r * k, Int(q)) != 1) throw DomainError("coprime_shift produced no witness");
    return k;
}

std::int64_t quadratic_coprime(const Int& X, const Int& Y, std::int64_t Z, WitnessSearch how) {
    if (Z < 1) throw DomainError("quadratic_coprime needs Z >= 1");
    if (gcd(gcd(X, Y), Int(Z)) != 1) throw DomainError("quadratic_coprime needs gcd(X, Y, Z) = 1");
    auto value = [&](std::int64_t k) { return Int(k) * X + (Int(k) * k - 1) * Y; };
    std::int64_t k = 0;
    if (how == WitnessSearch::Smallest) {
        std::int64_t bound = radical(Z);
        for (k = 0; k < bound; ++k)
            if (gcd(value(k), Int(Z)) == 1) break;
    } else {
        k = 1;
        for (auto t : prime_divisors(Z))
            if (mod(Y, t) != 0) k *= t;
    }
    if (gcd(value(k), Int(Z)) != 1) throw DomainError("quadratic_coprime produced no witness");
    return k;
}

Int delta_formula(const AbcTriple& t, std::int64_t a, std::int64_t b, std::int64_t gamma) {
    Int A = a, B = b, G = gamma;
    return B * t.A + 2 * (G - A) * t.B + (1 - B * B + 4 * A * G) * t.C;
}

std::pair<std::int64_t, std::int64_t> bezout(std::int64_t p, std::int64_t q) {
    // extended Euclid on (p, q); returns (c, d) with c p + d q = gcd = 1
    std::int64_t r0 = p, r1 = q, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t k = r0 / r1;
        std::int64_t r2 = r0 - k * r1, s2 = s0 - k * s1, t2 = t0 - k * t1;
        r0 = r1; r1 = r2; s0 = s1; s1 = s2; t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw DomainError("p and q are not coprime");
    return {s0, t0};
}

namespace {

PhaseSelection finish(const FourSquare& fs, std::int64_t q, std::int64_t a, std::int64_t b,
                      std::int64_t gamma) {
    PhaseSelection ps;
    ps.a = a;
    ps.b = b;
    ps.gamma = gamma;
    ps.Delta = delta_formula(abc(fs), a, b, gamma);
    ps.DeltaInv = ps.coprime(q) ? inverse_mod(mod(ps.Delta, q), q) : 0;
    std::tie(ps.c, ps.d) = bezout(fs.p, q);
    return ps;
}

}  // namespace

PhaseSelection select_phase(const FourSquare& fs, std::int64_t q, WitnessSearch how) {
    if (q < 1) throw DomainError("select_phase needs q >= 1");
    if (std::gcd(fs.p, q) != 1) throw DomainError("select_phase needs gcd(p, q) = 1");
    AbcTriple t = abc(fs);
    bool odd = q % 2 != 0;
    Int X = odd ? t.A : t.A - 2 * t.C;
    Int base = odd ? t.C : t.A;
    std::int64_t Z = narrow(gcd(Int(q), base), "gcd(q, base)");
    std::int64_t k = quadratic_coprime(X, t.B, Z, how);
    Int beta_k = Int(k) * X + (Int(k) * k - 1) * t.B;
    std::int64_t a = coprime_shift(base, 2 * beta_k, q, how);
    std::int64_t b = odd ? 2 * k * a : 1 + 2 * k * a;
    std::int64_t gamma = narrow(Int(k) * k * a, "gamma");
    PhaseSelection ps = finish(fs, q, a, b, gamma);
    ps.k = k;
    if (ps.Delta != 2 * Int(a) * beta_k + base) throw DomainError("branch formula for Delta disagrees");
    if (!ps.coprime(q)) throw DomainError("selected Delta not coprime to q");
    return ps;
}

PhaseSelection phase_from_abc(const FourSquare& fs, std::int64_t q, std::int64_t a, std::int64_t b,
                              std::int64_t gamma) {
    if (q < 1) throw DomainError("q must be positive");
    PhaseSelection ps = finish(fs, q, a, b, gamma);
    ps.overridden = true;
    return ps;
}

std::vector<GdeltaHit> gdelta_scan(const ThetaSource& theta, std::int64_t N, std::int64_t M,
                                   std::size_t scan_length) {
    if (N < 1 || M < 1) throw DomainError("gdelta_scan needs N, M >= 1");
    auto limit = theta.depth_limit();
    std::size_t len = limit ? std::min(scan_length, *limit) : scan_length;
    std::vector<Int> a;
    try {
        a = theta.coefficients(len);
    } catch (const PrecisionExhausted&) {
        return {};
    }
    std::vector<GdeltaHit> hits;
    Int p0 = 1, q0 = 0, p1 = a.empty() ? Int(0) : a[0], q1 = 1;
    for (std::size_t n = 1; n + 2 < a.size(); ++n) {
        Int p2 = a[n] * p1 + p0, q2 = a[n] * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (a[n] != N || a[n + 1] != 1 || a[n + 2] != M) continue;
        GdeltaHit h;
        h.n = n;
        h.p = p1;
        h.q = q1;
        h.lower = 1 + Rational(Int(1), Int(M + 1));
        h.upper = 1 + Rational(Int(1), Int(M)) + Rational(Int(1), Int(N));
        OpenInterval g = theta.separate(Rational(p1, q1));
        OpenInterval absg = g.lo >= 0 ? g : OpenInterval{-g.hi, -g.lo};
        h.beta_sq = invert_scaled(absg, Rational(q1 * q1));
        h.beta_sq_value = Rational(1 / (Rational(q1 * q1) * absg.mid())).convert_to<double>();
        int lo = h.beta_sq.compare(h.lower), hi = h.beta_sq.compare(h.upper);
        if (lo == 0 || hi == 0) throw PrecisionExhausted("window condition undecidable at hit " + std::to_string(n));
        h.satisfied = lo > 0 && hi < 0;
        hits.push_back(h);
    }
    return hits;
}

}  // namespace orbifold
