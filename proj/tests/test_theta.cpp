#include <doctest.h>

#include <cstdlib>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "orbifold/errors.hpp"
#include "orbifold/theta.hpp"

using namespace orbifold;

namespace {

const cplx I(0, 1);
const double kSqrt2 = std::sqrt(2.0);

// Jacobi triple product: theta_3(z,t) = prod (1-q^{2m})(1 + 2cos(2z) q^{2m-1} + q^{4m-2}), q = e^{i pi t}.
cplx theta3_product(cplx z, cplx t) {
    cplx q = std::exp(I * kPi * t), prod = 1, c = std::cos(2.0 * z);
    for (int m = 1; m < 400; ++m) {
        cplx q2m = std::pow(q, 2 * m), q2m1 = std::pow(q, 2 * m - 1);
        prod *= (1.0 - q2m) * (1.0 + 2.0 * c * q2m1 + q2m1 * q2m1);
    }
    return prod;
}

// plain symmetric partial sum, |n| <= 80
cplx theta_naive(int kind, cplx z, cplx t) {
    cplx s = 0;
    for (int n = -80; n <= 80; ++n) {
        double a = kind == 2 ? n + 0.5 : n;
        cplx v = std::exp(I * kPi * t * (a * a) + 2.0 * I * z * a);
        s += (kind == 4 && (n & 1)) ? -v : v;
    }
    return s;
}

}  // namespace

TEST_CASE("theta: closed values and cancellation") {
    CHECK(std::abs(theta(3, 0, I)) == doctest::Approx(1.0864348112133080).epsilon(1e-15));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.2, 3);
    for (int i = 0; i < 20; ++i) {
        cplx t(u(rng) - 1.5, u(rng));
        CHECK(std::abs(theta(2, kPi / 2, t)) < 1e-13);
    }
    CHECK(std::abs(theta(3, 0, 2.0 * I) - (1 + kSqrt2) * theta(2, 0, 2.0 * I)) < 1e-12);
    CHECK(std::abs(theta(3, 0, 0.5 * I) / theta(3, kPi / 2, 0.5 * I) - (1 + kSqrt2)) < 1e-12);
    CHECK(std::abs(theta(4, 0, 0.5 * I) - kSqrt2 * theta(2, 0, 2.0 * I)) < 1e-12);
    CHECK(std::abs(theta(3, 0, 0.5 * I) - kSqrt2 * theta(3, 0, 2.0 * I)) < 1e-12);
}

TEST_CASE("theta agrees with the triple product and a naive partial sum") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> re(-1, 1), im(0.4, 2.5), zi(-0.3, 0.3);
    for (int i = 0; i < 100; ++i) {
        cplx t(re(rng), im(rng)), z(3 * re(rng), zi(rng));
        CHECK(std::abs(theta(3, z, t) - theta3_product(z, t)) < 1e-12);
        for (int k : {2, 3, 4}) CHECK(std::abs(theta(k, z, t) - theta_naive(k, z, t)) < 1e-12);
    }
}

TEST_CASE("theta truncation: reported tail, tightening tol") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> re(-1, 1), im(0.1, 2);
    for (int i = 0; i < 50; ++i) {
        cplx t(re(rng), im(rng)), z(re(rng), 0.2 * re(rng));
        for (double tol : {1e-4, 1e-8, 1e-12}) {
            for (int k : {2, 3, 4}) {
                auto a = theta_eval(k, z, t, tol), b = theta_eval(k, z, t, tol / 2);
                CHECK(a.tail < tol / 16);
                CHECK(std::abs(a.value - b.value) <= tol);
                CHECK(std::abs(a.value - theta_naive(k, z, t)) <= tol);
            }
        }
    }
}

TEST_CASE("theta domain errors") {
    CHECK_THROWS_AS(theta(3, 0, cplx(1, 0)), DomainError);
    CHECK_THROWS_AS(theta(3, 0, cplx(0, -1)), DomainError);
    CHECK_THROWS_AS(theta(1, 0, I), DomainError);
    CHECK_THROWS_AS(theta_eval(3, 0, I, 0), DomainError);
}

TEST_CASE("theta_3 on the real line: period pi and ordering") {
    for (double x : {0.3, 0.5, 1.0, 2.5, 7.0}) {
        cplx t = x * I;
        double top = theta(3, 0, t).real(), bottom = theta(3, kPi / 2, t).real();
        CHECK(bottom > 0);
        for (int i = 0; i <= 64; ++i) {
            double z = kPi * i / 64.0;
            double v = theta(3, z, t).real();
            CHECK(std::abs(v - theta(3, z + kPi, t).real()) < 1e-13);
            CHECK(v <= top + 1e-15);
            CHECK(v >= bottom - 1e-15);
        }
    }
}

TEST_CASE("identity suite") {
    auto c = theta_identities_check(I, 1e-12);
    CHECK(c.pass);
    CHECK(c.checks.size() == 11);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> re(-1, 1), im(0.3, 2);
    for (int i = 0; i < 20; ++i) {
        cplx t(re(rng), im(rng));
        auto ci = theta_identities_check(t, 1e-10);
        CHECK(ci.pass);
        for (const auto& ch : ci.checks) CHECK(ch.value <= 1e-10);
    }
    CHECK_THROWS_AS(theta_identities_check(cplx(0, -1), 1e-10), DomainError);
}

TEST_CASE("psi") {
    CHECK(std::abs(psi(10) * std::exp(10 * kPi) - 1) < 1e-8);
    CHECK(psi(0.5) * std::exp(kPi / 2) < 1.01798);
    CHECK(psi(2) * std::exp(2 * kPi) < 1.000000014);
    for (double x : {0.05, 0.3, 1.0, 4.0}) {
        double s = 0;
        for (int k = 1; k < 2000; ++k) s += k * std::exp(-kPi * x * k * k);
        CHECK(psi(x, 1e-15) == doctest::Approx(s).epsilon(1e-13));
    }
    CHECK_THROWS_AS(psi(0), DomainError);
    CHECK_THROWS_AS(psi(-1), DomainError);
}

TEST_CASE("gaussian overlap") {
    CHECK(std::abs(gaussian_overlap(0, 0) - 1 / kSqrt2) < 1e-16);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 50; ++i) {
        double s = u(rng), t = u(rng);
        CHECK(std::abs(gaussian_overlap(s, t)) ==
              doctest::Approx(std::exp(-kPi / 2 * (s * s + t * t)) / kSqrt2).epsilon(1e-14));
    }
    using boost::math::quadrature::gauss_kronrod;
    for (auto [s, t] : {std::pair{1.0, 1.0}, {0.3, -0.7}, {-1.2, 0.4}}) {
        auto re = [s = s, t = t](double x) { return std::exp(-kPi * x * x - kPi * (x + s) * (x + s)) * std::cos(2 * kPi * t * x); };
        auto im = [s = s, t = t](double x) { return std::exp(-kPi * x * x - kPi * (x + s) * (x + s)) * std::sin(2 * kPi * t * x); };
        double r = gauss_kronrod<double, 61>::integrate(re, -12.0, 12.0, 15, 1e-14);
        double m = gauss_kronrod<double, 61>::integrate(im, -12.0, 12.0, 15, 1e-14);
        CHECK(std::abs(gaussian_overlap(s, t) - cplx(r, m)) < 1e-10);
    }
}

TEST_CASE("energy bound") {
    CHECK(energy_bound(kX0) < 0.532);
    CHECK(energy_bound(10) < 1e-10);
    auto g = energy_grid(10000);
    CHECK(g.below_one);
    CHECK(g.max_value < 1);
    CHECK(g.decreasing_past_x0);
    CHECK_THROWS_AS(energy_bound(1), DomainError);
    CHECK_THROWS_AS(energy_bound(0.5), DomainError);
    // E(1) limit: 2 theta_2(0,2i)^2 / theta_3(pi/2,i/2)^2 = 1
    CHECK(energy_bound(1 + 1e-9) == doctest::Approx(1).epsilon(1e-6));
}

TEST_CASE("raw bound and the short-interval facts") {
    auto rb = raw_bound_64(2);
    CHECK(rb.raw < 1);
    CHECK(rb.raw_le_energy);
    for (int i = 1; i <= 500; ++i) {
        double x = 1 + 9.0 * i / 500;
        auto r = raw_bound_64(x);
        CHECK(r.raw <= r.energy);
        CHECK(r.raw < 1);
    }
    CHECK_THROWS_AS(raw_bound_64(1), DomainError);
    double hprime = kEnergyK * std::exp(-5 * kPi / 2);
    CHECK(std::abs(hprime - 0.00993) < 1e-3);
    CHECK(std::abs((theta_gap_g(1.128) - theta_gap_g(1)) / 0.128 - 1.412) < 1e-3);
    CHECK(std::abs(theta_gap_g(1)) < 1e-14);
    // derivative of h at 1 by central difference
    CHECK((theta_gap_h(1 + 1e-6) - theta_gap_h(1 - 1e-6)) / 2e-6 == doctest::Approx(hprime).epsilon(1e-6));
}

TEST_CASE("g'' series: prefactor against finite differences, termwise negativity") {
    for (double x : {0.8, 1.0, 1.064, 1.128, 2.0}) {
        double h = 1e-4;
        double fd = (theta_gap_g(x + h) - 2 * theta_gap_g(x) + theta_gap_g(x - h)) / (h * h);
        CHECK(g_second_derivative(x) == doctest::Approx(fd).epsilon(1e-5));
    }
    for (int i = 0; i <= 1000; ++i) {
        double x = 1 + 9.0 * i / 1000;
        CHECK(g_second_derivative_terms_negative(x));
        CHECK(g_second_derivative(x) < 0);
    }
}

TEST_CASE("energy_check certificate") {
    auto c = energy_check(2000, 1e-12);
    CHECK(c.pass);
    CHECK(c.values.at("energy_x0") < 0.532);
    CHECK(c.values.at("secant_slope") == doctest::Approx(1.412).epsilon(1e-3));
}

TEST_CASE("rho norms") {
    auto n1 = rho_norms(1);
    CHECK(n1.norm_rho0 * n1.norm_rho0_inv == doctest::Approx(1 + kSqrt2).epsilon(1e-13));
    for (double b2 : {1.01, 1.5, 2.0, 2.914, 5.0}) {
        auto n = rho_norms(b2);
        for (int i = 0; i < 200; ++i) {
            double r = rho_m(b2, 0, i / 200.0);
            CHECK(r <= n.norm_rho0 + 1e-15);
            CHECK(r >= 1 / n.norm_rho0_inv - 1e-15);
        }
        CHECK(theta(3, 0, b2 * I).real() <= 1 + 1 / std::sqrt(b2));
    }
    CHECK_THROWS_AS(rho_norms(0), DomainError);
}

TEST_CASE("rho_m: definition and deviation bounds") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 50; ++i) {
        double b2 = 1 + 3 * u(rng), t = u(rng);
        long m = static_cast<long>(u(rng) * 9) - 4;
        cplx s = 0;
        for (int n = -60; n <= 60; ++n)
            s += std::exp(-kPi / 2 * b2 * n * n) * e(0.5 * b2 * m * n) * e(n * t);
        CHECK(rho_m(b2, m, t) == doctest::Approx(s.real()).epsilon(1e-13));
        CHECK(std::abs(s.imag()) < 1e-13);
    }
    auto z = rho_m_deviation_bounds(2, 0);
    CHECK(z.bound == 0);
    CHECK(z.grid_sup == 0);
    auto odd = rho_m_deviation_bounds(2, 1);
    double closed = theta(3, 0, I).real() - theta(3, kPi / 2, I).real();
    CHECK(odd.bound == doctest::Approx(closed).epsilon(1e-13));
    CHECK(odd.bound == doctest::Approx(2 * theta(2, 0, 4.0 * I).real()).epsilon(1e-13));
    CHECK(odd.grid_sup <= closed + 1e-14);
    for (double b2 : {1.05, 1.5, 2.0, 3.3})
        for (long m : {-5, -2, 1, 2, 3, 4, 7}) CHECK(rho_m_deviation_bounds(b2, m).consistent);
    CHECK_THROWS_AS(rho_m_deviation_bounds(1, 2), DomainError);
}

TEST_CASE("difference of shifted theta_3: b = 1, m = 1 and a non-trivial b") {
    for (auto [b, m] : {std::pair{1.0, 1L}, {0.8, 1L}, {1.3, -2L}, {0.6, 3L}}) {
        double bound = 8 * kPi * std::abs(double(m)) * (b - 0.5) * psi(b);
        double sup = 0;
        for (int i = 0; i < 1000; ++i) {
            double t = i / 1000.0;
            double f = theta(3, kPi * t + 2 * kPi * b * m, b * I).real(), g = theta(3, kPi * t, b * I).real();
            sup = std::max(sup, std::abs(f - g));
        }
        CHECK(sup <= bound + 1e-14);
    }
}

TEST_CASE("extended precision") {
    unsigned d = extended_digits();
    CHECK(d == 50);
    auto r = theta23_residual_ext(d);
    CHECK(std::abs(r.approx) < 1e-20);
    CHECK(std::abs(theta3_ratio_residual_ext(d).approx) < 1e-20);
    for (int k : {2, 3, 4})
        for (double y : {0.5, 1.0, 2.0})
            CHECK(theta_ext(k, 0.125, y, d).approx == doctest::Approx(theta(k, kPi / 8, y * I).real()).epsilon(1e-14));
    auto c = theta_identities_check_ext(1.0, 1e-40, d);
    CHECK(c.pass);
    auto c2 = theta_identities_check_ext(0.37, 1e-40, d);
    CHECK(c2.pass);
    auto hi = theta23_residual_ext(200);
    CHECK(std::abs(hi.approx) < 1e-150);
    CHECK(hi.text.size() > 150);
    setenv("ORBIFOLD_PRECISION", "80", 1);
    CHECK(extended_digits() == 80);
    setenv("ORBIFOLD_PRECISION", "x", 1);
    CHECK_THROWS_AS(extended_digits(), DomainError);
    unsetenv("ORBIFOLD_PRECISION");
}
