#include "orbifold/exact.hpp"

#include <cmath>
#include <sstream>

#include "orbifold/errors.hpp"

namespace orbifold {

Int floor_div(const Int& a, const Int& b) {
    Int qt = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --qt;
    return qt;
}

Int floor(const Rational& r) {
    return floor_div(numerator(r), denominator(r));
}

Int ceil(const Rational& r) {
    return -floor(-r);
}

Rational frac(const Rational& r) {
    return r - Rational(floor(r));
}

std::int64_t mod(const Int& a, std::int64_t q) {
    if (q <= 0) throw DomainError("modulus must be positive");
    Int r = a % q;
    if (r < 0) r += q;
    return r.convert_to<std::int64_t>();
}

std::int64_t mod(std::int64_t a, std::int64_t q) {
    if (q <= 0) throw DomainError("modulus must be positive");
    std::int64_t r = a % q;
    return r < 0 ? r + q : r;
}

std::int64_t narrow(const Int& a, const char* what) {
    if (a > Int(INT64_MAX) || a < Int(INT64_MIN))
        throw DomainError(std::string(what) + " does not fit in 64 bits");
    return a.convert_to<std::int64_t>();
}

Int gcd(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(a, b);
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t q) {
    if (q == 1) return 0;
    std::int64_t r0 = q, r1 = mod(a, q);
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t k = r0 / r1;
        std::int64_t r2 = r0 - k * r1;
        std::int64_t t2 = t0 - k * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw DomainError("not invertible mod q");
    return mod(t0, q);
}

cplx e(double x) {
    double r = x - std::floor(x);
    return std::polar(1.0, 2.0 * kPi * r);
}

Phase::Phase(Rational f, Rational kappa) : frac_(frac(f)), kappa_(std::move(kappa)) {}

Phase Phase::operator*(const Phase& o) const {
    return Phase(frac_ + o.frac_, kappa_ + o.kappa_);
}

Phase Phase::conj() const {
    return Phase(-frac_, -kappa_);
}

Phase Phase::pow(const Int& n) const {
    return Phase(frac_ * Rational(n), kappa_ * Rational(n));
}

cplx Phase::value(double K) const {
    // fraction and kappa*K reduced separately to keep the argument small
    double f = frac_.convert_to<double>();
    double kf = 0.0;
    if (kappa_ != 0) {
        Int n = floor(kappa_);
        Rational r = kappa_ - Rational(n);
        double kr = r.convert_to<double>() * K;
        double kn = std::fmod(n.convert_to<double>() * K, 1.0);
        kf = kr + kn;
    }
    return e(f + kf);
}

std::string Phase::str() const {
    std::ostringstream os;
    os << "e(" << frac_;
    if (kappa_ != 0) os << " + " << kappa_ << "*K";
    os << ")";
    return os.str();
}

}  // namespace orbifold
