#include "orbifold/ncseries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "orbifold/errors.hpp"

namespace orbifold {

void NCSeries::add(long m, long n, double weight, const Phase& phase) {
    if (std::abs(weight) < floor || weight == 0) return;
    auto [it, fresh] = terms.try_emplace({m, n}, NCTerm{weight, phase});
    if (fresh) return;
    if (!(it->second.phase == phase)) throw std::logic_error("NCSeries::add: conflicting exact phases");
    it->second.weight += weight;
}

cplx NCSeries::coeff(long m, long n) const {
    auto it = terms.find({m, n});
    return it == terms.end() ? cplx(0) : it->second.weight * it->second.phase.value(K);
}

double NCSeries::l1() const {
    double s = 0;
    for (const auto& [k, t] : terms) s += std::abs(t.weight);
    return s;
}

bool NCSeries::exactly_equal(const NCSeries& o) const {
    if (terms.size() != o.terms.size()) return false;
    for (const auto& [k, t] : terms) {
        auto it = o.terms.find(k);
        if (it == o.terms.end() || it->second.weight != t.weight || !(it->second.phase == t.phase)) return false;
    }
    return true;
}

double NCSeries::distance(const NCSeries& o) const {
    double d = 0;
    for (const auto& [k, t] : terms) d = std::max(d, std::abs(coeff(k.first, k.second) - o.coeff(k.first, k.second)));
    for (const auto& [k, t] : o.terms) d = std::max(d, std::abs(coeff(k.first, k.second) - o.coeff(k.first, k.second)));
    return d;
}

NCSeries adjoint(const NCSeries& s) {
    // (B^n A^m)^* = A^{-m} B^{-n} = lambda^{mn} B^{-n} A^{-m}
    NCSeries out = s;
    out.terms.clear();
    for (const auto& [k, t] : s.terms) {
        auto [m, n] = k;
        out.add(-m, -n, t.weight, t.phase.conj() * s.commutation.pow(Int(m) * n));
    }
    return out;
}

NCSeries fourier_map(const NCSeries& s, FourierConvention conv) {
    bool ok = conv == FourierConvention::Sigma ? (s.tag == GeneratorTag::U || s.tag == GeneratorTag::Uq)
                                               : (s.tag == GeneratorTag::V || s.tag == GeneratorTag::W);
    if (!ok) throw DomainError("fourier_map: generator tag does not match the Fourier convention");
    // A -> B, B -> A^*: B^n A^m -> A^{-n} B^m = lambda^{-nm} B^m A^{-n}
    NCSeries out = s;
    out.terms.clear();
    for (const auto& [k, t] : s.terms) {
        auto [m, n] = k;
        out.add(-n, m, t.weight, t.phase * s.commutation.pow(-Int(n) * m));
    }
    return out;
}

}  // namespace orbifold
