#include <cstdlib>
#include <ios>

#include <boost/multiprecision/mpfr.hpp>

#include "orbifold/errors.hpp"
#include "orbifold/theta.hpp"

namespace orbifold {

namespace {

using boost::multiprecision::mpfr_float;

// MPFR default precision is process-wide in this Boost version; callers are single-threaded.
struct PrecisionScope {
    unsigned saved;
    explicit PrecisionScope(unsigned digits) : saved(mpfr_float::default_precision()) {
        mpfr_float::default_precision(digits + 10);
    }
    ~PrecisionScope() { mpfr_float::default_precision(saved); }
};

// Real theta at z = pi u, t = i y, summed in symmetric pairs until the tail bound
// 4 e^{-pi y A^2}/(1-r) drops below 10^{-(digits+5)}.
mpfr_float theta_mp(int kind, const mpfr_float& u, const mpfr_float& y, unsigned digits) {
    if (kind < 2 || kind > 4) throw DomainError("theta kind must be 2, 3 or 4");
    if (!(y > 0)) throw DomainError("theta needs Im t > 0");
    const mpfr_float PI = boost::math::constants::pi<mpfr_float>(), eps = pow(mpfr_float(10), -int(digits) - 5);
    const double shift = kind == 2 ? 0.5 : 0.0;
    mpfr_float sum = kind == 2 ? mpfr_float(0) : mpfr_float(1);
    for (long A = kind == 2 ? 0 : 1;; ++A) {
        mpfr_float a = mpfr_float(A) + shift;
        mpfr_float term = 2 * exp(-PI * y * a * a) * cos(2 * PI * u * a);
        if (kind == 4 && (A & 1)) term = -term;
        sum += term;
        mpfr_float an = a + 1;
        mpfr_float next = 2 * exp(-PI * y * an * an);
        mpfr_float r = exp(-PI * y * (2 * an + 1));
        if (r < 0.5 && 2 * next < eps) break;
        if (A > 100'000'000) throw PrecisionExhausted("extended theta series did not converge");
    }
    return sum;
}

ExtValue to_ext(const mpfr_float& x, unsigned digits) {
    return {x.str(digits, std::ios_base::scientific), x.convert_to<double>()};
}

}  // namespace

unsigned extended_digits() {
    if (const char* s = std::getenv("ORBIFOLD_PRECISION")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end != s && *end == '\0' && v >= 20 && v <= 2000) return static_cast<unsigned>(v);
        throw DomainError("ORBIFOLD_PRECISION must be an integer in [20, 2000]");
    }
    return 50;
}

ExtValue theta_ext(int kind, double u, double y, unsigned digits) {
    PrecisionScope scope(digits);
    return to_ext(theta_mp(kind, mpfr_float(u), mpfr_float(y), digits), digits);
}

ExtValue theta23_residual_ext(unsigned digits) {
    PrecisionScope scope(digits);
    mpfr_float two(2);
    mpfr_float r = theta_mp(3, 0, two, digits) - (1 + sqrt(two)) * theta_mp(2, 0, two, digits);
    return to_ext(r, digits);
}

ExtValue theta3_ratio_residual_ext(unsigned digits) {
    PrecisionScope scope(digits);
    mpfr_float half(0.5);
    mpfr_float r = theta_mp(3, 0, half, digits) / theta_mp(3, half, half, digits) - (1 + sqrt(mpfr_float(2)));
    return to_ext(r, digits);
}

Certificate theta_identities_check_ext(double y_in, double tol, unsigned digits) {
    if (!(tol > 0)) throw DomainError("tolerance must be positive");
    PrecisionScope scope(digits);
    Certificate cert;
    cert.claim = "theta_identities_extended";
    cert.tolerance = tol;
    cert.threshold = tol;
    const mpfr_float y(y_in);
    auto th = [&](int k, const mpfr_float& u, const mpfr_float& yy) { return theta_mp(k, u, yy, digits); };
    auto record = [&](const std::string& name, const mpfr_float& r) {
        double v = abs(r).convert_to<double>();
        cert.values[name] = v;
        cert.check(name, v, tol, false);
    };
    for (double u0 : {0.0, 0.125}) {
        mpfr_float u(u0);
        std::string at = u0 == 0 ? " z=0" : " z=pi/8";
        record("duplication_theta3" + at, th(3, u, y) - th(3, 2 * u, 4 * y) - th(2, 2 * u, 4 * y));
        record("duplication_theta4" + at, th(4, u, y) - th(3, 2 * u, 4 * y) + th(2, 2 * u, 4 * y));
        record("half_period_shift" + at, th(3, u + 0.5, y) - th(4, u, y));
    }
    record("theta2_pi_shift", th(2, 1, y) + th(2, 0, y));
    mpfr_float s = 1 / sqrt(y), iy = 1 / y;
    record("inversion_theta3 z=0", th(3, 0, y) - s * th(3, 0, iy));
    record("inversion_theta4 z=0", th(4, 0, y) - s * th(2, 0, iy));
    cert.finish();
    return cert;
}

}  // namespace orbifold
