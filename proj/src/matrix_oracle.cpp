#include "orbifold/matrix_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <numeric>

#include "orbifold/errors.hpp"
#include "orbifold/finite_weil.hpp"
#include "orbifold/series_sum.hpp"

namespace orbifold {

namespace {

// e(num / den) with num reduced first
cplx e_exact(std::int64_t num, std::int64_t den) { return e(double(mod(num, den)) / double(den)); }

}  // namespace

SpectralReport theorem64_spectral_check(std::int64_t r, std::int64_t s, int cutoff) {
    if (s <= 0) throw DomainError("rho needs a positive denominator");
    if (cutoff < 1) throw DomainError("cutoff must be at least 1");
    std::int64_t g = std::gcd(r, s);
    r /= g, s /= g;
    if (r <= s) throw ScopeError("rho <= 1: the element is not invertible there, the check is out of scope");
    SpectralReport rep;
    rep.r = r, rep.s = s, rep.dimension = s, rep.cutoff = cutoff;
    const double rho = rep.rho();

    auto [V, U] = clock_shift_rep(s, mod(r, s));
    const auto n = static_cast<Eigen::Index>(s);
    std::vector<CMatrix> Upow(2 * cutoff + 1), Vpow(2 * cutoff + 1);
    Upow[cutoff] = Vpow[cutoff] = CMatrix::Identity(n, n);
    CMatrix Ui = U.adjoint(), Vi = V.adjoint();
    for (int k = 1; k <= cutoff; ++k) {
        Upow[cutoff + k] = U * Upow[cutoff + k - 1];
        Vpow[cutoff + k] = V * Vpow[cutoff + k - 1];
        Upow[cutoff - k] = Ui * Upow[cutoff - k + 1];
        Vpow[cutoff - k] = Vi * Vpow[cutoff - k + 1];
    }
    CMatrix A = CMatrix::Zero(n, n);
    double l1 = 0;
    for (int m = -cutoff; m <= cutoff; ++m)
        for (int k = -cutoff; k <= cutoff; ++k) {
            double w = std::exp(-kPi / 2 * rho * double(m * m + k * k));
            l1 += w;
            // e(rho m k / 2) = e(r m k / 2s)
            A += (w * e_exact(r * m * k, 2 * s)) * Upow[cutoff + k] * Vpow[cutoff + m];
        }
    rep.hermiticity_residual = (A - A.adjoint()).norm();
    CMatrix H = (A + A.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H, Eigen::EigenvaluesOnly);
    rep.min_eigenvalue = es.eigenvalues().minCoeff();
    rep.max_eigenvalue = es.eigenvalues().maxCoeff();
    double box = 0;
    for (int k = -cutoff; k <= cutoff; ++k) box += std::exp(-kPi / 2 * rho * k * k);
    double tail = 2 * geometric_tail([rho](long k) { return std::exp(-kPi / 2 * rho * double(k) * double(k)); }, cutoff + 1);
    rep.tail_budget = 2 * box * tail + tail * tail + 64 * std::numeric_limits<double>::epsilon() * l1 * double(s);
    rep.pass = rep.min_eigenvalue > rep.tail_budget && rep.hermiticity_residual <= rep.tail_budget;
    return rep;
}

Certificate spectral_certificate(const SpectralReport& rep) {
    Certificate c;
    c.claim = "spectral_positivity";
    c.values["rho_num"] = double(rep.r);
    c.values["rho_den"] = double(rep.s);
    c.values["dimension"] = double(rep.dimension);
    c.values["cutoff"] = rep.cutoff;
    c.values["min_eigenvalue"] = rep.min_eigenvalue;
    c.values["max_eigenvalue"] = rep.max_eigenvalue;
    c.values["hermiticity_residual"] = rep.hermiticity_residual;
    c.tail_budget = rep.tail_budget;
    c.threshold = rep.tail_budget;
    c.check("min_eigenvalue_above_budget", -rep.min_eigenvalue, -rep.tail_budget);
    c.check("hermiticity_within_budget", rep.hermiticity_residual, rep.tail_budget, false);
    c.notes = "s-dimensional quotient: positivity here is necessary, not sufficient";
    c.finish();
    return c;
}

double scalar_probe(int cutoff) {
    double sum = 0;
    for (int m = -cutoff; m <= cutoff; ++m)
        for (int n = -cutoff; n <= cutoff; ++n) {
            double sign = ((m * n) % 2 == 0 ? 1 : -1) * ((m + n) % 2 == 0 ? 1 : -1);
            sum += std::exp(-kPi / 2 * double(m * m + n * n)) * sign;
        }
    return sum;
}

DiophantineOracle brute_force_diophantine(const LatticeData& ld, const Int& u3, const Int& u4, std::int64_t max_q) {
    const std::int64_t q = ld.q();
    if (q > max_q) throw ScopeError("brute-force enumeration refused above q = " + std::to_string(max_q));
    DiophantineOracle out;
    out.q = q;
    if (q <= 12) {
        for (std::int64_t a = 0; a < q; ++a)
            for (std::int64_t b = 0; b < q; ++b) out.pairs.emplace_back(a, b);
    } else {
        out.pairs = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {q - 1, 2}, {3 % q, q - 1}, {q / 2, q / 3}, {q - 2, q - 2}};
    }
    const Int a = ld.ps.a, b = ld.ps.b, g = ld.ps.gamma;
    bool have_solver = ld.ps.coprime(q);
    DiophantineSolution ds;
    if (have_solver) ds = solve_diophantine(ld, u3, u4);
    out.unique = true;
    out.agrees = have_solver;
    for (auto [n1, n2] : out.pairs) {
        std::int64_t count = 0, s3 = -1, s4 = -1;
        for (std::int64_t n3 = 0; n3 < q; ++n3)
            for (std::int64_t n4 = 0; n4 < q; ++n4) {
                auto m = m_forms(ld.fs, ld.ps.c, n1, n2, n3, n4);
                if (mod(m[2] + 2 * a * m[0] + b * m[1] + u3, q) != 0) continue;
                if (mod(m[3] + 2 * g * m[1] + b * m[0] + u4, q) != 0) continue;
                ++count, s3 = n3, s4 = n4;
            }
        out.solution_counts.push_back(count);
        if (count != 1) {
            out.unique = false;
            out.agrees = false;
            continue;
        }
        if (have_solver) {
            auto [e3, e4] = ds.n34(n1, n2);
            if (mod(e3, q) != s3 || mod(e4, q) != s4) out.agrees = false;
        }
    }
    return out;
}

ProjectionProbe finite_projection_probe(std::int64_t q, std::int64_t p, const PhaseSelection& ps) {
    if (std::gcd(p, q) != 1) throw DomainError("finite_projection_probe needs gcd(p, q) = 1");
    auto fs = four_square(p);
    auto phi = gaussian_phi(ps, q);
    auto X = to_heisenberg_matrix(inner_D0(phi, phi, fs));
    ProjectionProbe out;
    out.q = q, out.p = p;
    out.residual = (X - CMatrix::Identity(X.rows(), X.cols())).norm();
    out.trace = X.trace().real() / double(X.rows());
    return out;
}

}  // namespace orbifold
