#include "orbifold/theta.hpp"

#include <algorithm>
#include <cmath>

#include "orbifold/errors.hpp"
#include "orbifold/series_sum.hpp"

namespace orbifold {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr int kMaxLayers = 10'000'000;

void require_positive(double x, const char* what) {
    if (!(x > 0)) throw DomainError(std::string(what) + " must be positive");
}

}  // namespace

ThetaEval theta_eval(int kind, cplx z, cplx t, double tol) {
    if (kind < 2 || kind > 4) throw DomainError("theta kind must be 2, 3 or 4");
    if (!(t.imag() > 0)) throw DomainError("theta needs Im t > 0");
    require_positive(tol, "tolerance");
    const double y = t.imag(), w = std::abs(z.imag());
    const double shift = kind == 2 ? 0.5 : 0.0;
    const cplx ipt = cplx(0, kPi) * t, iz2 = cplx(0, 2) * z;
    auto term = [&](double a, long n) {
        cplx v = std::exp(ipt * (a * a) + iz2 * a);
        return (kind == 4 && (n & 1)) ? -v : v;
    };
    // |term(a)| <= exp(-pi y a^2 + 2|a| w); layer A groups the indices with |a| = A + shift.
    auto layer_bound = [&](long A) {
        double a = A + shift;
        return (a == 0 ? 1.0 : 2.0) * std::exp(-kPi * y * a * a + 2 * a * w);
    };
    ThetaEval out{0.0, 0, 0};
    cplx sum = 0;
    for (long A = 0; A < kMaxLayers; ++A) {
        double a = A + shift;
        if (kind == 2) {
            sum += term(a, A) + term(-a, -A - 1);
        } else if (A == 0) {
            sum += term(0, 0);
        } else {
            sum += term(a, A) + term(-a, -A);
        }
        double next = layer_bound(A + 1);
        double r = std::exp(-kPi * y * (2 * (a + 1) + 1) + 2 * w);
        if (next == 0 || (r < 1 && next / (1 - r) < tol / 16)) {
            out.value = sum;
            out.tail = next == 0 ? 0 : next / (1 - r);
            out.terms = static_cast<int>(A);
            return out;
        }
    }
    throw PrecisionExhausted("theta series did not converge to tolerance");
}

cplx theta(int kind, cplx z, cplx t, double tol) { return theta_eval(kind, z, t, tol).value; }

Certificate theta_identities_check(cplx t, double tol) {
    require_positive(tol, "tolerance");
    if (!(t.imag() > 0)) throw DomainError("theta needs Im t > 0");
    Certificate cert;
    cert.claim = "theta_identities";
    cert.tolerance = tol;
    cert.threshold = tol;
    const double et = tol / 64;
    auto th = [&](int k, cplx z, cplx tt) { return theta(k, z, tt, et); };
    const cplx i(0, 1);
    const cplx s = std::pow(-i * t, -0.5);  // principal branch, Re(-it) > 0
    for (cplx z : {cplx(0, 0), cplx(0.37, -0.11)}) {
        std::string at = z == cplx(0, 0) ? "z=0" : "z=0.37-0.11i";
        double r1 = std::abs(th(3, z, t) - th(3, 2.0 * z, 4.0 * t) - th(2, 2.0 * z, 4.0 * t));
        double r2 = std::abs(th(4, z, t) - th(3, 2.0 * z, 4.0 * t) + th(2, 2.0 * z, 4.0 * t));
        double r4 = std::abs(th(3, z + kPi / 2, t) - th(4, z, t));
        cplx pref = s * std::exp(z * z / (kPi * i * t));
        double r5 = std::abs(th(3, z, t) - pref * th(3, z / t, -1.0 / t));
        double r6 = std::abs(th(4, z, t) - pref * th(2, z / t, -1.0 / t));
        cert.values["duplication_theta3 " + at] = r1;
        cert.values["duplication_theta4 " + at] = r2;
        cert.values["half_period_shift " + at] = r4;
        cert.values["inversion_theta3 " + at] = r5;
        cert.values["inversion_theta4 " + at] = r6;
        cert.check("duplication_theta3 " + at, r1, tol, false);
        cert.check("duplication_theta4 " + at, r2, tol, false);
        cert.check("half_period_shift " + at, r4, tol, false);
        cert.check("inversion_theta3 " + at, r5, tol, false);
        cert.check("inversion_theta4 " + at, r6, tol, false);
    }
    double r3 = std::abs(th(2, kPi, t) + th(2, 0, t));
    cert.values["theta2_pi_shift"] = r3;
    cert.check("theta2_pi_shift", r3, tol, false);
    cert.finish();
    return cert;
}

double psi(double x, double tol) {
    require_positive(x, "psi argument");
    require_positive(tol, "tolerance");
    auto f = [x](int k) { return (k + 1) * std::exp(-kPi * x * (k + 1.0) * (k + 1.0)); };
    return tail_controlled_sum(f, f, tol);
}

cplx gaussian_overlap(double s, double t) {
    return e(-s * t / 2) * (std::exp(-kPi / 2 * (s * s + t * t)) / kSqrt2);
}

double energy_bound(double x, double tol) {
    if (!(x > 1)) throw DomainError("energy bound needs x > 1");
    double t2 = theta(2, 0, cplx(0, 2 * x), tol).real();
    double t3 = theta(3, kPi / 2, cplx(0, x / 2), tol).real();
    return (kEnergyK * (x - 1) * std::exp(-5 * kPi * x / 2) + 2 * t2 * t2) / (t3 * t3);
}

RawBound raw_bound_64(double beta_sq, double tol) {
    if (!(beta_sq > 1)) throw DomainError("raw bound needs beta^2 > 1");
    double x = beta_sq;
    double t2 = theta(2, 0, cplx(0, 2 * x), tol).real();
    double t3 = theta(3, kPi / 2, cplx(0, x / 2), tol).real();
    RawBound out;
    out.raw = (8 * kPi * (x - 1) * psi(x / 2, tol) * psi(2 * x, tol) + 2 * t2 * t2) / (t3 * t3);
    out.energy = energy_bound(x, tol);
    out.raw_le_energy = out.raw <= out.energy;
    return out;
}

RhoNorms rho_norms(double beta_sq, double tol) {
    require_positive(beta_sq, "beta^2");
    return {theta(3, 0, cplx(0, beta_sq / 2), tol).real(),
            1 / theta(3, kPi / 2, cplx(0, beta_sq / 2), tol).real()};
}

double rho_m(double beta_sq, long m, double t, double tol) {
    require_positive(beta_sq, "beta^2");
    // reduce the real argument mod pi first; theta_3 has period pi in z
    double u = t + beta_sq * static_cast<double>(m) / 2;
    u -= std::floor(u);
    return theta(3, kPi * u, cplx(0, beta_sq / 2), tol).real();
}

RhoDeviation rho_m_deviation_bounds(double beta_sq, long m, double tol, int grid_points) {
    if (!(beta_sq > 1)) throw DomainError("rho_m bounds need beta^2 > 1");
    require_positive(tol, "tolerance");
    if (grid_points < 1) throw DomainError("grid needs at least one point");
    RhoDeviation out;
    out.grid_points = grid_points;
    if (m % 2 == 0)
        out.bound = 4 * kPi * std::abs(static_cast<double>(m / 2)) * (beta_sq - 1) * psi(beta_sq / 2, tol / 64);
    else
        out.bound = 2 * theta(2, 0, cplx(0, 2 * beta_sq), tol / 64).real();
    for (int i = 0; i < grid_points; ++i) {
        double t = static_cast<double>(i) / grid_points;
        out.grid_sup = std::max(out.grid_sup, std::abs(rho_m(beta_sq, m, t, tol / 64) - rho_m(beta_sq, 0, t, tol / 64)));
    }
    out.consistent = out.grid_sup <= out.bound + tol;
    return out;
}

double theta_gap_g(double x, double tol) {
    require_positive(x, "g argument");
    return theta(3, 0, cplx(0, 2 * x), tol).real() - (1 + kSqrt2) * theta(2, 0, cplx(0, 2 * x), tol).real();
}

double theta_gap_h(double x) { return kEnergyK * (x - 1) * std::exp(-5 * kPi * x / 2); }

double g_second_derivative(double x, double tol) {
    require_positive(x, "g argument");
    auto f = [x](int k) {
        double a = k + 1.0, b = k + 0.5;
        return a * a * a * a * std::exp(-2 * kPi * x * a * a) - (1 + kSqrt2) * b * b * b * b * std::exp(-2 * kPi * x * b * b);
    };
    auto m = [x](int k) {
        double a = k + 1.0, b = k + 0.5;
        return (2 + kSqrt2) * a * a * a * a * std::exp(-2 * kPi * x * b * b);
    };
    return 8 * kPi * kPi * tail_controlled_sum(f, m, tol / (8 * kPi * kPi));
}

bool g_second_derivative_terms_negative(double x, int kmax) {
    // compare logarithms so that underflowed terms are still decided
    for (int k = 0; k < kmax; ++k) {
        double a = k + 1.0, b = k + 0.5;
        double lhs = 4 * std::log(a) - 2 * kPi * x * a * a;
        double rhs = std::log(1 + kSqrt2) + 4 * std::log(b) - 2 * kPi * x * b * b;
        if (!(lhs < rhs)) return false;
    }
    return true;
}

EnergyGrid energy_grid(int points, double hi, double tol) {
    if (points < 1) throw DomainError("grid needs at least one point");
    if (!(hi > 1)) throw DomainError("grid upper end must exceed 1");
    EnergyGrid g;
    g.points = points;
    g.below_one = true;
    g.decreasing_past_x0 = true;
    double prev = 0, prev_x = 0;
    for (int i = 1; i <= points; ++i) {
        double x = 1 + (hi - 1) * i / points;
        double v = energy_bound(x, tol);
        if (v > g.max_value) g.max_value = v, g.argmax = x;
        if (!(v < 1)) g.below_one = false;
        if (prev_x > kX0 && x > kX0 && v > prev) g.decreasing_past_x0 = false;
        prev = v, prev_x = x;
    }
    return g;
}

Certificate energy_check(int grid_points, double tol) {
    require_positive(tol, "tolerance");
    Certificate cert;
    cert.claim = "energy_bound_below_one";
    cert.tolerance = tol;
    cert.threshold = 1;
    auto& v = cert.values;

    v["psi_half_scaled"] = psi(0.5, tol / 64) * std::exp(kPi / 2);
    v["psi_two_scaled"] = psi(2, tol / 64) * std::exp(2 * kPi);
    cert.check("psi_half_scaled", v["psi_half_scaled"], 1.01798);
    cert.check("psi_two_scaled", v["psi_two_scaled"], 1.000000014);

    v["energy_x0"] = energy_bound(kX0, tol / 64);
    cert.check("energy_x0", v["energy_x0"], 0.532);

    auto grid = energy_grid(grid_points, 10, tol / 64);
    v["energy_grid_max"] = grid.max_value;
    v["energy_grid_argmax"] = grid.argmax;
    v["energy_grid_points"] = grid.points;
    cert.check("energy_grid_max", grid.max_value, 1);
    cert.require("energy_decreasing_past_x0", grid.decreasing_past_x0);

    v["g_at_1"] = std::abs(theta_gap_g(1, tol / 64));
    cert.check("g_at_1", v["g_at_1"], tol, false);

    double hprime = kEnergyK * std::exp(-5 * kPi / 2);
    double secant = (theta_gap_g(1.128, tol / 64) - theta_gap_g(1, tol / 64)) / 0.128;
    v["h_prime_at_1"] = hprime;
    v["secant_slope"] = secant;
    cert.check("h_prime_at_1_matches_0.00993", std::abs(hprime - 0.00993), 1e-3);
    cert.check("secant_slope_matches_1.412", std::abs(secant - 1.412), 1e-3);
    cert.check("tangent_below_secant", hprime, secant);

    // h < g on (1, 1.128] and termwise negativity of g'' on [1, 10]
    double worst_gap = -1e300, worst_raw = -1e300;
    bool gpp_neg = true;
    int sub = std::max(1, grid_points / 10);
    for (int i = 1; i <= sub; ++i) {
        double x = 1 + 0.128 * i / sub;
        worst_gap = std::max(worst_gap, theta_gap_h(x) - theta_gap_g(x, tol / 64));
        double xx = 1 + 9.0 * i / sub;
        gpp_neg = gpp_neg && g_second_derivative_terms_negative(xx) && g_second_derivative(xx, tol) < 0;
        auto rb = raw_bound_64(xx, tol / 64);
        worst_raw = std::max(worst_raw, rb.raw - rb.energy);
    }
    v["h_minus_g_max"] = worst_gap;
    v["raw_minus_energy_max"] = worst_raw;
    cert.check("h_below_g_on_short_interval", worst_gap, 0);
    cert.require("g_second_derivative_negative", gpp_neg);
    cert.check("raw_le_energy", worst_raw, 0, false);
    cert.finish();
    return cert;
}

}  // namespace orbifold
