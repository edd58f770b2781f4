#include "orbifold/projection_certificate.hpp"

#include <cmath>
#include <stdexcept>

#include "orbifold/errors.hpp"
#include "orbifold/finite_weil.hpp"
#include "orbifold/series_sum.hpp"
#include "orbifold/theta.hpp"

namespace orbifold {

namespace {

constexpr double kHalfPi = kPi / 2;

// sum over |k| <= N and over |k| > N of e^{-pi/2 s k^2}
std::pair<double, double> gaussian_split(double s, int N) {
    double box = 0;
    for (int k = -N; k <= N; ++k) box += std::exp(-kHalfPi * s * k * k);
    double tail = 2 * geometric_tail([s](long k) { return std::exp(-kHalfPi * s * double(k) * double(k)); }, N + 1);
    return {box, tail};
}

Certificate base(const LatticeData& ld, const std::string& claim) {
    Certificate c;
    c.claim = claim;
    c.inputs = inputs_of(ld);
    return c;
}

}  // namespace

CertificateInputs inputs_of(const LatticeData& ld) {
    CertificateInputs in;
    in.theta = ld.conv.theta.spec();
    in.theta_digest = ld.conv.theta.digest();
    in.p = ld.p();
    in.q = ld.q();
    in.pj = ld.fs.pj;
    in.a = ld.ps.a;
    in.b = ld.ps.b;
    in.gamma = ld.ps.gamma;
    in.c = ld.ps.c;
    in.d = ld.ps.d;
    return in;
}

NCSeries series_ff(const LatticeData& ld, int cutoff) {
    if (cutoff < 1) throw DomainError("cutoff must be at least 1");
    const double b2 = ld.conv.beta_sq;
    NCSeries s;
    s.tag = GeneratorTag::W;
    s.first = "W1", s.second = "W2";
    s.commutation = Phase(0, 1);
    s.K = b2;
    s.K_name = "beta^2";
    s.floor = 1e-300;
    for (long m = -cutoff; m <= cutoff; ++m)
        for (long n = -cutoff; n <= cutoff; ++n)
            s.add(m, n, std::exp(-kHalfPi * b2 * double(m * m + n * n)), Phase(0, Rational(m * n, 2)));
    auto [box, tail] = gaussian_split(b2, cutoff);
    s.tail_l1 = 2 * box * tail + tail * tail;
    return s;
}

FU1FSeries series_fU1f(const LatticeData& ld, const DiophantineSolution& ds, const PhasePolynomial& pp, int cutoff) {
    if (cutoff < 1) throw DomainError("cutoff must be at least 1");
    if (pp.t_choice != TChoice::Eps1) throw DomainError("series_fU1f needs the eps1 phase polynomial");
    auto [u3, u4] = u_values(ld, TChoice::Eps1);
    if (ds.u3 != u3 || ds.u4 != u4) throw DomainError("series_fU1f needs the eps1 diophantine solution");
    const double b2 = ld.conv.beta_sq, beta = ld.conv.beta, alpha = ld.conv.alpha;
    const std::int64_t q = ld.q();
    FU1FSeries out;
    out.c3 = ds.c3, out.c4 = ds.c4, out.K = pp.K, out.mu0 = ld.mu0;
    out.mu0_sqrt = std::sqrt(ld.mu0.convert_to<double>());
    out.prefactor = Phase(Rational(pp.K, Int(2 * q)));
    NCSeries& s = out.series;
    s.tag = GeneratorTag::W;
    s.first = "W1", s.second = "W2";
    s.commutation = Phase(0, 1);
    s.K = b2;
    s.K_name = "beta^2";
    s.floor = 1e-300;
    for (long m = -cutoff; m <= cutoff; ++m)
        for (long n = -cutoff; n <= cutoff; ++n) {
            double x = alpha + beta * double(m);
            s.add(m, n, std::exp(-kHalfPi * (x * x + b2 * double(n * n))), Phase(Rational(-n, 2 * q), Rational(m * n, 2)));
        }
    // (alpha + beta m)^2 >= beta^2 m^2 - 2|m|/q >= beta^2 m^2 - 2|m|
    double srow = 0;
    for (long m = -cutoff; m <= cutoff; ++m) {
        double x = alpha + beta * double(m);
        srow += std::exp(-kHalfPi * x * x);
    }
    double trow = 2 * geometric_tail([b2](long k) { return std::exp(-kHalfPi * (b2 * double(k * k) - 2 * double(k))); }, cutoff + 1);
    auto [scol, tcol] = gaussian_split(b2, cutoff);
    s.tail_l1 = srow * tcol + trow * scol + trow * tcol;
    return out;
}

int mu_sign(const LatticeData& ld, long m, long n) {
    Int P = Int(ld.fs[1]) * ld.fs[3] + Int(ld.fs[2]) * ld.fs[4];
    Int ex = Int(ld.q()) * P * (Int(n) * n - Int(m) * m);
    return mod(ex, 2) == 0 ? 1 : -1;
}

NCSeries primitive_form(const LatticeData& ld, int cutoff) {
    if (cutoff < 1) throw DomainError("cutoff must be at least 1");
    const double k = 1 / ld.conv.beta_sq;  // q^2 alpha^2
    NCSeries s;
    s.tag = GeneratorTag::Uq;
    s.first = "U1^q", s.second = "U2^q";
    s.commutation = Phase(0, 1);
    s.K = k;
    s.K_name = "q^2 alpha^2";
    s.floor = 1e-300;
    for (long m = -cutoff; m <= cutoff; ++m)
        for (long n = -cutoff; n <= cutoff; ++n) {
            double w = k * std::exp(-kHalfPi * k * double(m * m + n * n)) * mu_sign(ld, m, n);
            s.add(m, n, w, Phase(0, Rational(m * n, 2)));
        }
    auto [box, tail] = gaussian_split(k, cutoff);
    s.tail_l1 = k * (2 * box * tail + tail * tail);
    return s;
}

Certificate invertibility_certificate(double beta_sq, double tol) {
    if (!(beta_sq > 1))
        throw ScopeError("invertibility needs beta^2 > 1; for beta^2 < 1 the element cannot be invertible");
    Certificate c;
    c.claim = "invertibility";
    c.tolerance = tol;
    c.threshold = 1;
    auto rb = raw_bound_64(beta_sq, tol);
    auto norms = rho_norms(beta_sq, tol);
    double C = rb.raw;
    c.values["beta_sq"] = beta_sq;
    c.values["raw_bound"] = C;
    c.values["energy_bound"] = rb.energy;
    c.values["norm_rho0"] = norms.norm_rho0;
    c.values["norm_rho0_inv"] = norms.norm_rho0_inv;
    double inv = norms.norm_rho0_inv * norms.norm_rho0_inv / (1 - C);
    c.values["inverse_norm_bound"] = inv;
    c.values["norm_bound"] = (1 + C) * norms.norm_rho0 * norms.norm_rho0;
    c.values["spectrum_lower_bound"] = (1 - C) / (norms.norm_rho0_inv * norms.norm_rho0_inv);
    c.check("raw_bound_below_one", C, 1);
    c.check("raw_le_energy", C, rb.energy, false);
    c.require("inverse_norm_bound_finite", std::isfinite(inv) && inv > 0);
    c.finish();
    return c;
}

Certificate invertibility_certificate(const LatticeData& ld, double tol) {
    auto c = invertibility_certificate(ld.conv.beta_sq, tol);
    c.inputs = inputs_of(ld);
    return c;
}

Certificate centrality_certificate(const LatticeData& ld, double tol) {
    Certificate c = base(ld, "approximate_centrality");
    c.tolerance = tol;
    const double b2 = ld.conv.beta_sq, beta = ld.conv.beta;
    const double q = static_cast<double>(ld.q());
    const double x = 1 / b2;  // q^2 alpha^2
    double tail = 0;
    double s = tail_controlled_sum(
        [&](int k) {
            double n = k + 1;
            return std::exp(-kHalfPi * x * n * n) * std::abs(e(n / (q * b2)) - 1.0);
        },
        [&](int k) {
            double n = k + 1;
            return 2 * std::exp(-kHalfPi * x * n * n) * std::min(1.0, kPi * n / (q * b2)) + 0 * n;
        },
        tol, &tail);
    double th = theta(3, 0, cplx(0, x / 2), tol).real();
    double l1 = 2 / b2 * th * (s + tail);
    double nsum = psi(x / 2, tol);
    double nsum_bound = b2 / kPi + 2 * beta / std::sqrt(kPi * std::exp(1.0));
    double majorant = 4 * kPi / (q * b2) * (1 + beta * std::sqrt(2.0)) * (1 / kPi + 2 / (beta * std::sqrt(kPi * std::exp(1.0))));
    c.threshold = 12 * kPi / q;
    c.values["l1_sum"] = l1;
    c.values["majorant"] = majorant;
    c.values["threshold"] = c.threshold;
    c.values["theta3"] = th;
    c.values["n_weighted_sum"] = nsum;
    c.values["n_weighted_sum_bound"] = nsum_bound;
    c.tail_budget = 2 / b2 * th * tail;
    c.check("l1_le_majorant", l1, majorant, false);
    c.check("majorant_below_12pi_over_q", majorant, c.threshold);
    c.check("n_weighted_sum_bound", nsum, nsum_bound, false);
    c.check("theta3_le_1_plus_beta_sqrt2", th, 1 + beta * std::sqrt(2.0), false);
    c.finish();
    return c;
}

double cutdown_rate_constant() {
    double k1 = 0;
    for (int m = -40; m <= 40; ++m)
        for (int n = -40; n <= 40; ++n) {
            double am = std::abs(m), an = std::abs(n);
            k1 += std::exp(-kHalfPi * (m * m + n * n)) * ((0.5 + am) * std::exp(kPi * (0.5 + am)) + an);
        }
    return k1;
}

Certificate cutdown_certificate(const LatticeData& ld, const DiophantineSolution& ds, const PhasePolynomial& pp,
                                int cutoff, int N, double tol) {
    if (N < 1) throw DomainError("N must be at least 1");
    auto fu = series_fU1f(ld, ds, pp, cutoff);  // validates the eps1 inputs
    Certificate c = base(ld, "cutdown_approximation");
    c.tolerance = tol;
    const std::int64_t qi = ld.q();
    const double q = static_cast<double>(qi), b2 = ld.conv.beta_sq, a2 = ld.conv.alpha * ld.conv.alpha;

    // exact congruences
    Int nu1 = Int(ds.c3) * ds.b1 - Int(ds.c4) * ds.a1;
    Int nu2 = Int(ds.c4) * ds.a2 - Int(ds.c3) * ds.b2 + ld.ps.c;
    if (mod(nu1, qi) != 0 || mod(nu2, qi) != 0)
        throw std::logic_error("cutdown congruence failed: nu1 or nu2 is not as derived");
    Int nu2_exp = Int(ld.p()) * (Int(ds.c3) * ds.b2 - Int(ds.c4) * ds.a2);
    c.require("nu1_is_one", mod(nu1, qi) == 0);
    c.require("c4a2_minus_c3b2_is_minus_c", mod(nu2, qi) == 0);
    c.require("nu2_is_e(1/q)", mod(nu2_exp - 1, qi) == 0);
    c.require("phase_congruences", pp.congruences_hold(qi));
    c.values["nu2_exponent_mod_q"] = static_cast<double>(mod(nu2_exp, qi));

    // (i) B - b^{-2}, split at N
    auto g = [&](double m) { return std::exp(-kHalfPi * (a2 + 2 * m / q)); };
    double box = 0;
    for (int m = -N; m <= N; ++m)
        for (int n = -N; n <= N; ++n)
            box += std::exp(-kHalfPi * b2 * (m * m + n * n)) * std::abs(g(m) * e(-n / (2 * q)) - 1.0);
    // sum_{|m|>N} e^{-pi/2 m^2}(g(m) + 1): both signs of m
    auto row_out = [&](long k) {
        double kk = double(k);
        return std::exp(-kHalfPi * kk * kk) * (g(kk) + g(-kk) + 2);
    };
    double m_out = geometric_tail(row_out, N + 1);
    double m_in = 0;
    for (int m = -N; m <= N; ++m) m_in += std::exp(-kHalfPi * m * m) * (g(m) + 1);
    auto [n_in, n_out] = gaussian_split(1, N);
    double theta_half = theta(3, 0, cplx(0, 0.5), tol).real();
    double t2 = theta_half * m_out, t3 = m_in * n_out, t4 = m_out * n_out;
    double total = box + t2 + t3 + t4;
    double rate = cutdown_rate_constant() * kPi / q;
    c.values["box_sum"] = box;
    c.values["tail_m"] = t2;
    c.values["tail_n"] = t3;
    c.values["tail_mn"] = t4;
    c.values["difference_bound"] = total;
    c.values["box_rate_bound"] = rate;
    c.values["N"] = N;
    c.tail_budget = t2 + t3 + t4;
    c.check("box_sum_le_rate", box, rate, false);
    c.check("difference_bound_finite", total, 1e300);

    // (ii) conjugation by V4^c4 V3^c3
    double conj_sum = 0, conj_mid = 0;
    for (int m = -40; m <= 40; ++m)
        for (int n = -40; n <= 40; ++n) {
            double d = std::abs(e(n / q) - 1.0);
            conj_sum += std::exp(-kHalfPi * b2 * (m * m + n * n)) * d;
            conj_mid += std::exp(-kHalfPi * (m * m + n * n)) * d;
        }
    double conj_bound = 2 * kPi / q * theta_half * 2 * psi(0.5, tol);
    c.values["conjugation_sum"] = conj_sum;
    c.values["conjugation_bound"] = conj_bound;
    c.check("conjugation_sum_le_beta1_sum", conj_sum, conj_mid, false);
    c.check("conjugation_le_2pi_over_q", conj_mid, conj_bound, false);

    c.values["w1_phase"] = pp.w1_phase(qi).convert_to<double>();
    c.values["w2_phase"] = pp.w2_phase(qi).convert_to<double>();
    c.values["prefactor_phase"] = fu.prefactor.fraction().convert_to<double>();
    c.values["c3"] = static_cast<double>(ds.c3);
    c.values["c4"] = static_cast<double>(ds.c4);
    c.values["mu0_sqrt"] = fu.mu0_sqrt;
    c.threshold = rate;
    c.finish();
    return c;
}

TraceReport trace_report(const LatticeData& ld) {
    TraceReport r;
    r.trace = 1 / ld.conv.beta_sq;
    r.unit = r.trace / static_cast<double>(ld.q());
    r.one_minus = 1 - r.trace;
    return r;
}

Certificate trace_certificate(const LatticeData& ld) {
    Certificate c = base(ld, "trace");
    auto r = trace_report(ld);
    c.values["trace"] = r.trace;
    c.values["subprojection_trace"] = r.unit;
    c.values["one_minus_trace"] = r.one_minus;
    c.threshold = 1;
    c.check("trace_positive", -r.trace, 0);
    c.check("trace_below_one", r.trace, 1);
    c.check("full_sum_of_subprojections", std::abs(r.sub(ld.q()) - r.trace), 1e-12 * r.trace, false);
    c.finish();
    return c;
}

Certificate scalarity_certificate(const LatticeData& ld) {
    Certificate c = base(ld, "phi_inner_scalarity");
    const std::int64_t q = ld.q();
    if (q > 2000) {
        c.skipped = true;
        c.notes = "not evaluated: q > 2000";
        return c;
    }
    std::int64_t evaluated = 0, nonzero_off = 0;
    auto visit = [&](std::int64_t k, std::int64_t l) {
        auto [h, z] = exact_coefficient(ld.ps, ld.fs, q, k, l);
        ++evaluated;
        if (k == 0 && l == 0) {
            c.require("coeff00_equals_q_squared", !z && h[0] == q * q);
        } else if (!z) {
            ++nonzero_off;
        }
    };
    if (q <= 60) {
        for (std::int64_t k = 0; k < q; ++k)
            for (std::int64_t l = 0; l < q; ++l) visit(k, l);
    } else {
        visit(0, 0);
        std::uint64_t x = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(q);
        for (int i = 0; i < 128; ++i) {
            x = x * 6364136223846793005ULL + 1442695040888963407ULL;
            std::int64_t k = static_cast<std::int64_t>((x >> 33) % q), l = static_cast<std::int64_t>((x >> 7) % q);
            if (k == 0 && l == 0) continue;
            visit(k, l);
        }
        c.notes = "sampled coefficients";
    }
    c.values["coefficients_evaluated"] = static_cast<double>(evaluated);
    c.values["nonzero_off_origin"] = static_cast<double>(nonzero_off);
    c.require("off_origin_coefficients_vanish", nonzero_off == 0);
    c.finish();
    return c;
}

Certificate congruence_certificate(const LatticeData& ld) {
    Certificate c = base(ld, "phase_congruences");
    auto [z3, z4] = u_values(ld, TChoice::Zero);
    auto [e3, e4] = u_values(ld, TChoice::Eps1);
    auto dz = solve_diophantine(ld, z3, z4);
    auto de = solve_diophantine(ld, e3, e4);
    auto pz = phase_polynomial(ld, dz, TChoice::Zero);
    auto pe = phase_polynomial(ld, de, TChoice::Eps1);
    const std::int64_t q = ld.q();
    c.require("congruences_zero_case", pz.congruences_hold(q));
    c.require("congruences_eps1_case", pe.congruences_hold(q));
    c.require("a_b_d1_e1_independent_of_t", pz.aP == pe.aP && pz.bP == pe.bP && pz.d1P == pe.d1P && pz.e1P == pe.e1P);
    c.require("d_split", pe.dP == 2 * pe.d0P + pe.d1P && pe.eP == 2 * pe.e0P + pe.e1P);
    c.require("x_commutation", mod(x_commutator_residue(ld, de), q) == 0);
    c.require("system_solved_zero_case", solution_satisfies_system(ld, dz));
    c.require("system_solved_eps1_case", solution_satisfies_system(ld, de));
    c.values["K_eps1"] = pe.K.convert_to<double>();
    c.values["c3"] = static_cast<double>(de.c3);
    c.values["c4"] = static_cast<double>(de.c4);
    c.finish();
    return c;
}

Certificate w0_certificate(const LatticeData& ld) {
    Certificate c = base(ld, "w0_unitary");
    const std::int64_t q = ld.q();
    if (q > 64) {
        c.skipped = true;
        c.notes = "not evaluated: q > 64";
        return c;
    }
    auto r = w0_report(ld.fs, ld.ps, q);
    c.tolerance = 1e-10;
    c.threshold = 1e-10;
    c.values["unitarity"] = r.unitarity;
    c.values["sigma_adjoint"] = r.sigma_adjoint;
    c.values["intertwining"] = r.intertwining;
    c.check("unitarity", r.unitarity, 1e-10);
    c.check("sigma0_prime_gives_adjoint", r.sigma_adjoint, 1e-10);
    c.check("phi_hat_equals_phi_W0", r.intertwining, 1e-10);
    c.finish();
    return c;
}

}  // namespace orbifold
