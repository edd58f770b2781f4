#pragma once

#include <map>
#include <string>
#include <utility>

#include "orbifold/exact.hpp"

namespace orbifold {

// Which algebra the two generators live in; Fourier maps check it.
//   U  : U1, U2 in A_theta            Uq : U1^q, U2^q in A_theta
//   V  : V1, V2 in C*(D-perp)         W  : W1, W2, canonical pair of the rotation algebra they generate
enum class GeneratorTag { Untagged, U, Uq, V, W };
enum class FourierConvention { Sigma, SigmaPrime };

// coefficient = weight * phase.value(K)
struct NCTerm {
    double weight = 0;
    Phase phase;
};

// sum c(m,n) second^n first^m with first * second = commutation * second * first.
struct NCSeries {
    GeneratorTag tag = GeneratorTag::Untagged;
    std::string first, second;
    Phase commutation;
    double K = 0;        // value of the symbolic parameter counted by Phase::kappa
    std::string K_name;  // e.g. "beta^2"
    std::map<std::pair<long, long>, NCTerm> terms;
    double tail_l1 = 0;  // l1 mass of what the cutoff dropped
    double floor = 0;    // weights below this were not stored

    void add(long m, long n, double weight, const Phase& phase);
    cplx coeff(long m, long n) const;
    double l1() const;
    // same support, identical weights and phases
    bool exactly_equal(const NCSeries& o) const;
    // max |c - c'| over the union of supports
    double distance(const NCSeries& o) const;
};

NCSeries adjoint(const NCSeries& s);
NCSeries fourier_map(const NCSeries& s, FourierConvention conv);

}  // namespace orbifold
