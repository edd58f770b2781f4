#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace orbifold {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

Int floor_div(const Int& a, const Int& b);
Int floor(const Rational& r);
Int ceil(const Rational& r);
Rational frac(const Rational& r);  // r - floor(r), in [0,1)

// Representative in [0, q).
std::int64_t mod(const Int& a, std::int64_t q);
std::int64_t mod(std::int64_t a, std::int64_t q);

std::int64_t narrow(const Int& a, const char* what);
Int gcd(const Int& a, const Int& b);
std::int64_t inverse_mod(std::int64_t a, std::int64_t q);

// e(x) = exp(2 pi i x)
cplx e(double x);

// e(frac + kappa * K) where K is a real parameter kept symbolic (beta^2, alpha^2, q^2 alpha^2 ...).
// frac is reduced mod 1 on construction; kappa is never reduced.
class Phase {
public:
    Phase() = default;
    explicit Phase(Rational f, Rational kappa = 0);

    static Phase one() { return Phase(); }

    const Rational& fraction() const { return frac_; }
    const Rational& kappa() const { return kappa_; }

    Phase operator*(const Phase& o) const;
    Phase conj() const;
    Phase pow(const Int& n) const;

    bool operator==(const Phase& o) const = default;
    bool is_one() const { return frac_ == 0 && kappa_ == 0; }

    cplx value(double K) const;
    std::string str() const;

private:
    Rational frac_ = 0;
    Rational kappa_ = 0;
};

}  // namespace orbifold
