#include <doctest.h>

#include <cmath>
#include <random>

#include "orbifold/errors.hpp"
#include "orbifold/number_theory.hpp"
#include "support.hpp"

using namespace orbifold;

TEST_CASE("convergents of sqrt2-1 start 0/1, 1/2, 2/5") {
    auto cs = convergents(support::sqrt2m1(), 3);
    REQUIRE(cs.size() == 3);
    CHECK(cs[0].p == 0);
    CHECK(cs[0].q == 1);
    CHECK(cs[1].p == 1);
    CHECK(cs[1].q == 2);
    CHECK(cs[2].p == 2);
    CHECK(cs[2].q == 5);
}

TEST_CASE("golden fractional part gives Fibonacci ratios") {
    auto cs = convergents(support::golden(), 8);
    std::int64_t f0 = 0, f1 = 1;  // p_n = F_n, q_n = F_{n+1}
    for (const auto& c : cs) {
        CHECK(c.p == f0);
        CHECK(c.q == f1);
        std::int64_t f2 = f0 + f1;
        f0 = f1;
        f1 = f2;
    }
}

TEST_CASE("convergent determinant identity and the 1/q^2 bound") {
    for (auto src : {support::sqrt2m1(), support::golden(), ThetaSource::periodic({0}, {2, 1, 3}),
                     ThetaSource::periodic({0, 7, 1}, {4, 1, 1})}) {
        auto cs = convergents(src, 20);
        for (std::size_t n = 1; n < cs.size(); ++n) {
            Int det = Int(cs[n].q) * cs[n - 1].p - Int(cs[n].p) * cs[n - 1].q;
            CHECK(abs(det) == 1);
            if (n >= 2) CHECK(cs[n].q > cs[n - 1].q);
            auto [eq21, cov] = check_approximation(src, cs[n].p, cs[n].q);
            CHECK(eq21);
            CHECK(cov);
            CHECK(cs[n].beta_sq > 1.0);
        }
    }
}

TEST_CASE("terminating CF is refused") {
    CHECK_THROWS_AS(convergents(ThetaSource::cf({0, 2}), 3), PrecisionExhausted);
    CHECK_NOTHROW(convergents(ThetaSource::cf({0, 2, 2, 2}), 4));
}

TEST_CASE("decimal input: convergents until precision runs out") {
    auto src = ThetaSource::decimal("0.4142135623", 10);
    auto cs = convergents(src, 3);
    CHECK(cs[2].p == 2);
    CHECK(cs[2].q == 5);
    CHECK_THROWS_AS(convergents(src, 30), PrecisionExhausted);
}

TEST_CASE("check_approximation") {
    auto s = support::sqrt2m1();
    CHECK(check_approximation(s, 1, 2) == std::pair{true, true});
    // |theta - 1/3| ~ 0.0809 < 1/9 and 3|3 theta - 1| ~ 0.728 < 1
    CHECK(check_approximation(s, 1, 3) == std::pair{true, true});
    // |theta - 1/4| ~ 0.164 > 1/16
    CHECK(check_approximation(s, 1, 4) == std::pair{false, false});
    CHECK(check_approximation(s, 0, 1) == std::pair{true, true});
    // 10 digits cannot place theta relative to 4142135623/10^10 +- 1e-10
    CHECK_THROWS_AS(check_approximation(ThetaSource::decimal("0.4142135623", 10), 4142135623LL, 10000000000LL),
                    PrecisionExhausted);
}

TEST_CASE("make_convergent: beta^2 for sqrt2-1 at 1/2") {
    auto c = make_convergent(support::sqrt2m1(), 1, 2);
    double theta = std::sqrt(2.0L) - 1.0L;
    CHECK(!c.above);
    auto n = c.normalize();
    CHECK(n.normalized);
    CHECK(n.p == 1);
    CHECK(n.above);
    CHECK(c.beta_sq == doctest::Approx(1.0 / (2.0 * std::fabs(2.0 * theta - 1.0))).epsilon(1e-12));
    CHECK(c.beta_sq == doctest::Approx(2.9142135623730950).epsilon(1e-12));
    CHECK(c.qgap() == doctest::Approx(0.34314575050761980).epsilon(1e-12));
    CHECK(c.alpha * c.alpha * 4 == doctest::Approx(c.qgap()).epsilon(1e-12));
    CHECK(c.beta == doctest::Approx(1.0 / (2 * c.alpha)).epsilon(1e-12));
}

TEST_CASE("four_square examples and brute-force oracle") {
    auto same = [](const FourSquare& f, std::array<std::int64_t, 4> v) { return f.pj == v; };
    CHECK(same(four_square(0), {0, 0, 0, 0}));
    CHECK(same(four_square(1), {1, 0, 0, 0}));
    CHECK(same(four_square(7), {2, 1, 1, 1}));
    for (std::int64_t p = 0; p <= 400; ++p) {
        std::array<std::int64_t, 4> best{-1, -1, -1, -1};
        for (std::int64_t a = 0; a * a <= p && best[0] < 0; ++a)
            for (std::int64_t b = 0; b <= a && best[0] < 0; ++b)
                for (std::int64_t c = 0; c <= b && best[0] < 0; ++c)
                    for (std::int64_t d = 0; d <= c; ++d)
                        if (a * a + b * b + c * c + d * d == p) {
                            best = {a, b, c, d};
                            break;
                        }
        CHECK(same(four_square(p), best));
    }
}

TEST_CASE("ABC relation on random p") {
    CHECK(abc(FourSquare{1, {1, 0, 0, 0}}).A == 1);
    auto t = abc(four_square(7));
    CHECK(t.A == 3);
    CHECK(t.B == 3);
    CHECK(t.C == 1);
    auto z = abc(four_square(0));
    CHECK((z.A == 0 && z.B == 0 && z.C == 0));
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> d(0, 1000000);
    for (int i = 0; i < 1000; ++i) {
        auto fs = four_square(d(rng));
        Int s = 0;
        for (auto x : fs.pj) s += Int(x) * x;
        REQUIRE(s == fs.p);
        auto u = abc(fs);
        CHECK(u.A * u.A + 4 * u.B * u.B + 4 * u.C * u.C == Int(fs.p) * fs.p);
    }
}

TEST_CASE("coprime_shift and quadratic_coprime") {
    CHECK(coprime_shift(3, 0, 2) == 0);
    auto k = coprime_shift(2, 3, 4);
    CHECK(gcd(Int(2 + 3 * k), Int(4)) == 1);
    CHECK(coprime_shift(0, 1, 5) == 1);
    CHECK_THROWS_AS(coprime_shift(2, 4, 6), DomainError);

    CHECK(quadratic_coprime(1, 0, 6) == 1);
    auto k2 = quadratic_coprime(2, 3, 5);
    CHECK(gcd(Int(2 * k2 + 3 * (k2 * k2 - 1)), Int(5)) == 1);
    CHECK(quadratic_coprime(0, 1, 3) == 0);
    CHECK_THROWS_AS(quadratic_coprime(2, 4, 6), DomainError);

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> d(-500, 500), dq(1, 3000);
    int tried = 0;
    while (tried < 300) {
        Int p = d(rng), r = d(rng);
        std::int64_t q = dq(rng);
        if (gcd(gcd(p, r), Int(q)) != 1) continue;
        ++tried;
        for (auto how : {WitnessSearch::Smallest, WitnessSearch::Constructive}) {
            auto kk = coprime_shift(p, r, q, how);
            CHECK(gcd(p + r * kk, Int(q)) == 1);
            auto kq = quadratic_coprime(p, r, q, how);
            CHECK(gcd(Int(kq) * p + (Int(kq) * kq - 1) * r, Int(q)) == 1);
        }
    }
}

namespace {

Int delta_oracle(const FourSquare& fs, const PhaseSelection& ps) {
    Int p1 = fs[1], p2 = fs[2], p3 = fs[3], p4 = fs[4];
    Int A = p1 * p1 - p2 * p2 + p3 * p3 - p4 * p4, B = p1 * p2 + p3 * p4, C = p1 * p4 - p2 * p3;
    Int a = ps.a, b = ps.b, g = ps.gamma;
    return b * A + 2 * (g - a) * B + (1 - b * b + 4 * a * g) * C;
}

}  // namespace

TEST_CASE("select_phase examples") {
    for (std::int64_t q : {1, 2, 3, 4, 9, 10, 97}) {
        auto fs = four_square(1);
        auto ps = select_phase(fs, q);
        CHECK(ps.Delta == ps.b);  // A = 1, B = C = 0
        CHECK(gcd(ps.Delta, Int(q)) == 1);
    }
    {
        auto fs = four_square(7);
        auto ps = select_phase(fs, 3);
        CHECK(delta_oracle(fs, ps) == ps.Delta);
        CHECK(gcd(delta_oracle(fs, ps), Int(3)) == 1);
        CHECK(ps.b == 2 * ps.k * ps.a);
    }
    {
        auto fs = four_square(5);
        auto ps = select_phase(fs, 4);
        CHECK(ps.b % 2 != 0);
        CHECK(ps.b == 1 + 2 * ps.k * ps.a);
        CHECK(gcd(delta_oracle(fs, ps), Int(4)) == 1);
    }
}

TEST_CASE("select_phase on 500 random coprime pairs, both witness paths") {
    std::mt19937_64 rng(5);
    int odd = 0, even = 0;
    for (int i = 0; i < 500; ++i) {
        auto [p, q] = support::coprime_pair(rng, 10000, 10000);
        auto fs = four_square(p);
        for (auto how : {WitnessSearch::Smallest, WitnessSearch::Constructive}) {
            auto ps = select_phase(fs, q, how);
            CHECK(delta_oracle(fs, ps) == ps.Delta);
            CHECK(gcd(ps.Delta, Int(q)) == 1);
            CHECK(mod(Int(ps.DeltaInv) * ps.Delta, q) == mod(1, q));
            CHECK(Int(ps.c) * p + Int(ps.d) * q == 1);
            CHECK(ps.gamma == ps.k * ps.k * ps.a);
        }
        (q % 2 ? odd : even)++;
    }
    CHECK(odd > 100);
    CHECK(even > 100);
}

TEST_CASE("phase_from_abc flags a bad selection") {
    auto fs = four_square(1);
    auto ps = phase_from_abc(fs, 4, 0, 0, 0);  // Delta = 0
    CHECK(!ps.coprime(4));
    CHECK(ps.DeltaInv == 0);
}

namespace {

// purely periodic [x] = [c0; c1, ..., c_{k-1}, x] solved as a quadratic
long double periodic_value(const std::vector<int>& per) {
    long double P0 = 1, Q0 = 0, P1 = per[0], Q1 = 1;
    for (std::size_t i = 1; i < per.size(); ++i) {
        long double P2 = per[i] * P1 + P0, Q2 = per[i] * Q1 + Q0;
        P0 = P1; Q0 = Q1; P1 = P2; Q1 = Q2;
    }
    // x = (P1 x + P0) / (Q1 x + Q0)
    long double A = Q1, B = Q0 - P1, C = -P0;
    return (-B + std::sqrt(B * B - 4 * A * C)) / (2 * A);
}

}  // namespace

TEST_CASE("gdelta_scan against the quadratic-irrational oracle") {
    auto src = ThetaSource::periodic({0}, {2, 1, 3});
    auto hits = gdelta_scan(src, 2, 3, 40);
    REQUIRE(hits.size() >= 10);
    long double xi = periodic_value({1, 3, 2});
    Int q0 = 0, q1 = 1;
    std::vector<Int> qs{1};
    auto a = src.coefficients(40);
    for (std::size_t n = 1; n < a.size(); ++n) {
        Int q2 = a[n] * q1 + q0;
        q0 = q1;
        q1 = q2;
        qs.push_back(q1);
    }
    for (const auto& h : hits) {
        CHECK(h.n % 3 == 1);
        long double b2 = xi + qs[h.n - 1].convert_to<long double>() / qs[h.n].convert_to<long double>();
        CHECK(static_cast<double>(b2) == doctest::Approx(h.beta_sq_value).epsilon(1e-12));
        CHECK(b2 > 1.0L + 1.0L / 4);
        CHECK(b2 < 1.0L + 1.0L / 3 + 1.0L / 2);
        CHECK(h.satisfied);
    }
    auto h55 = gdelta_scan(ThetaSource::periodic({0}, {5, 1}), 5, 5, 30);
    REQUIRE(!h55.empty());
    for (const auto& h : h55) {
        CHECK(h.satisfied);
        CHECK(h.beta_sq_value > 7.0 / 6);
        CHECK(h.beta_sq_value < 1.4);
    }
    CHECK(gdelta_scan(support::sqrt2m1(), 2, 3).empty());
}

TEST_CASE("theta source complement and digest") {
    auto s = support::sqrt2m1();
    auto c = s.complement();
    auto cs = c.coefficients(4);  // 2 - sqrt2 = [0;1,1,2,2,...]
    CHECK(cs[0] == 0);
    CHECK(cs[1] == 1);
    CHECK(cs[2] == 1);
    CHECK(cs[3] == 2);
    CHECK(s.digest() != c.digest());
    CHECK(s.spec() == "cf[0,(2)]");
}

TEST_CASE("cf_of_rational parity choice") {
    for (std::int64_t q = 1; q < 40; ++q)
        for (std::int64_t p = 0; p <= q; ++p) {
            if (std::gcd(p, q) != 1 || (p == 0 && q != 1)) continue;
            auto v = cf_of_rational(p, q, false);
            CHECK(v.size() % 2 == 1);
            Rational x = Rational(v.back());
            for (int i = static_cast<int>(v.size()) - 2; i >= 0; --i) x = Rational(v[i]) + 1 / x;
            CHECK(x == Rational(p, q));
            auto c = make_convergent(support::theta_above(p, q), p, q);
            CHECK(c.above);
            CHECK(c.qgap() < 0.34);
        }
}
