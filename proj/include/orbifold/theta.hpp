#pragma once

#include <string>
#include <vector>

#include "orbifold/certificate.hpp"
#include "orbifold/exact.hpp"

namespace orbifold {

// Jacobi theta functions with nome e^{i pi t}:
//   theta_2(z,t) = sum_n e^{pi i t (n+1/2)^2} e^{i(2n+1)z}
//   theta_3(z,t) = sum_n e^{pi i t n^2} e^{2inz}
//   theta_4(z,t) = sum_n (-1)^n e^{pi i t n^2} e^{2inz}
struct ThetaEval {
    cplx value;
    double tail = 0;  // rigorous bound on the omitted terms
    int terms = 0;    // largest |index| summed
};

ThetaEval theta_eval(int kind, cplx z, cplx t, double tol);
cplx theta(int kind, cplx z, cplx t, double tol = 1e-16);

// Identity suite at t: duplication, half-period shifts, and both inversion formulas.
Certificate theta_identities_check(cplx t, double tol);

// Psi(x) = sum_{k>=1} k e^{-pi x k^2}
double psi(double x, double tol = 1e-17);

// H(s,t) = int e^{-pi x^2} e^{-pi (x+s)^2} e(tx) dx in closed form.
cplx gaussian_overlap(double s, double t);

inline constexpr double kEnergyK = 8 * kPi * 1.018;
inline constexpr double kX0 = 1 + 2 / (5 * kPi);

double energy_bound(double x, double tol = 1e-16);

struct RawBound {
    double raw = 0;     // right side of the invertibility estimate
    double energy = 0;  // E(beta^2)
    bool raw_le_energy = false;
};
RawBound raw_bound_64(double beta_sq, double tol = 1e-16);

struct RhoNorms {
    double norm_rho0 = 0;      // theta_3(0, i beta^2/2)
    double norm_rho0_inv = 0;  // 1 / theta_3(pi/2, i beta^2/2)
};
RhoNorms rho_norms(double beta_sq, double tol = 1e-16);

// rho_m(t) = theta_3(pi t + pi/2 beta^2 m, i beta^2/2)
double rho_m(double beta_sq, long m, double t, double tol = 1e-16);

struct RhoDeviation {
    double bound = 0;     // certified upper bound on ||rho_m - rho_0||
    double grid_sup = 0;  // sup of |rho_m(t) - rho_0(t)| over the grid
    int grid_points = 0;
    bool consistent = false;  // grid_sup <= bound + tol
};
RhoDeviation rho_m_deviation_bounds(double beta_sq, long m, double tol = 1e-14, int grid_points = 2048);

// g(x) = theta_3(0,2ix) - (1+sqrt2) theta_2(0,2ix) and h(x) = K(x-1)e^{-5 pi x/2}
double theta_gap_g(double x, double tol = 1e-16);
double theta_gap_h(double x);
// g''(x) = 8 pi^2 sum_k [(k+1)^4 e^{-2pi x(k+1)^2} - (1+sqrt2)(k+1/2)^4 e^{-2pi x(k+1/2)^2}]
double g_second_derivative(double x, double tol = 1e-16);
// every term of that sum is negative for k < kmax
bool g_second_derivative_terms_negative(double x, int kmax = 64);

struct EnergyGrid {
    double max_value = 0;
    double argmax = 0;
    bool below_one = false;
    bool decreasing_past_x0 = false;
    int points = 0;
};
// E on x_i = 1 + i (hi-1)/points, i = 1..points
EnergyGrid energy_grid(int points, double hi = 10, double tol = 1e-15);

// Constants and grid facts used for E(x) < 1, assembled into one certificate.
Certificate energy_check(int grid_points, double tol);

// Extended precision (MPFR). Only real z = pi u and purely imaginary t = i y are supported.
unsigned extended_digits();  // ORBIFOLD_PRECISION, default 50
struct ExtValue {
    std::string text;  // decimal expansion at the working precision
    double approx = 0;
};
ExtValue theta_ext(int kind, double u, double y, unsigned digits);
// theta_3(0,2i) - (1+sqrt2) theta_2(0,2i)
ExtValue theta23_residual_ext(unsigned digits);
// theta_3(0,i/2)/theta_3(pi/2,i/2) - (1+sqrt2)
ExtValue theta3_ratio_residual_ext(unsigned digits);
Certificate theta_identities_check_ext(double y, double tol, unsigned digits);

}  // namespace orbifold
