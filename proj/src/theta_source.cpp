#include "orbifold/theta_source.hpp"

#include <algorithm>
#include <sstream>

#include "orbifold/errors.hpp"

namespace orbifold {

int OpenInterval::compare(const Rational& x) const {
    if (!hi_inf && hi <= x) return -1;
    if (lo >= x) return 1;
    return 0;
}

std::vector<Int> cf_from_interval(OpenInterval iv, std::size_t max_count) {
    std::vector<Int> out;
    while (out.size() < max_count) {
        Int a = floor(iv.lo);
        if (ceil(iv.hi) - 1 != a) break;
        out.push_back(a);
        Rational lo = iv.lo - Rational(a), hi = iv.hi - Rational(a);
        if (lo == 0) break;  // next partial quotient unbounded
        iv = {1 / hi, 1 / lo};
    }
    return out;
}

ThetaSource ThetaSource::cf(std::vector<Int> coeffs) {
    if (coeffs.empty()) throw DomainError("empty continued fraction");
    for (std::size_t i = 1; i < coeffs.size(); ++i)
        if (coeffs[i] < 1) throw DomainError("partial quotients after a0 must be positive");
    ThetaSource s;
    s.kind_ = Kind::Prefix;
    s.pre_ = std::move(coeffs);
    return s;
}

ThetaSource ThetaSource::periodic(std::vector<Int> pre, std::vector<Int> period) {
    if (pre.empty() || period.empty()) throw DomainError("periodic CF needs a0 and a nonempty period");
    for (std::size_t i = 1; i < pre.size(); ++i)
        if (pre[i] < 1) throw DomainError("partial quotients after a0 must be positive");
    for (const auto& a : period)
        if (a < 1) throw DomainError("period entries must be positive");
    ThetaSource s;
    s.kind_ = Kind::Periodic;
    s.pre_ = std::move(pre);
    s.period_ = std::move(period);
    return s;
}

ThetaSource ThetaSource::decimal(const std::string& digits, int precision) {
    if (precision < 1) throw DomainError("decimal precision must be positive");
    auto dot = digits.find('.');
    std::string ip = digits.substr(0, dot);
    std::string fp = dot == std::string::npos ? "" : digits.substr(dot + 1);
    if (ip.empty()) ip = "0";
    auto digit_only = [](const std::string& t) {
        return std::all_of(t.begin(), t.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
    };
    if (!digit_only(ip) || !digit_only(fp)) throw DomainError("malformed decimal: " + digits);
    std::string all = ip + fp;
    auto nz = all.find_first_not_of('0');
    // Int(string) reads a leading 0 as octal
    Int num(nz == std::string::npos ? std::string("0") : all.substr(nz));
    Int den = boost::multiprecision::pow(Int(10), static_cast<unsigned>(fp.size()));
    ThetaSource s;
    s.kind_ = Kind::Decimal;
    s.dec_value_ = Rational(num, den);
    s.dec_precision_ = precision;
    s.dec_text_ = digits;
    return s;
}

ThetaSource ThetaSource::complement() const {
    ThetaSource s = *this;
    s.complemented_ = !complemented_;
    return s;
}

Int ThetaSource::raw_coefficient(std::size_t i) const {
    if (i < pre_.size()) return pre_[i];
    if (kind_ == Kind::Periodic) return period_[(i - pre_.size()) % period_.size()];
    throw PrecisionExhausted("continued fraction terminates: coefficient " + std::to_string(i) +
                             " is not determined by the input");
}

std::size_t ThetaSource::raw_known() const {
    return kind_ == Kind::Prefix ? pre_.size() : SIZE_MAX;
}

OpenInterval ThetaSource::raw_enclosure(std::size_t depth) const {
    if (kind_ == Kind::Decimal) {
        Rational eps(Int(1), boost::multiprecision::pow(Int(10), static_cast<unsigned>(dec_precision_)));
        return {dec_value_ - eps, dec_value_ + eps};
    }
    depth = std::max<std::size_t>(1, std::min(depth, raw_known()));
    Int p0 = 1, q0 = 0, p1 = raw_coefficient(0), q1 = 1;
    for (std::size_t i = 1; i < depth; ++i) {
        Int a = raw_coefficient(i);
        Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    // tail x in (1, inf): theta strictly between p1/q1 and the mediant
    Rational u(p1, q1), v(p1 + p0, q1 + q0);
    return u < v ? OpenInterval{u, v} : OpenInterval{v, u};
}

OpenInterval ThetaSource::enclosure(std::size_t depth) const {
    OpenInterval iv = raw_enclosure(depth);
    if (complemented_) return {1 - iv.hi, 1 - iv.lo};
    return iv;
}

std::optional<std::size_t> ThetaSource::depth_limit() const {
    if (kind_ == Kind::Periodic) return std::nullopt;
    if (kind_ == Kind::Decimal) return 0;
    return pre_.size();
}

std::vector<Int> ThetaSource::coefficients(std::size_t count) const {
    if (!complemented_ && kind_ != Kind::Decimal) {
        std::vector<Int> out;
        for (std::size_t i = 0; i < count; ++i) out.push_back(raw_coefficient(i));
        return out;
    }
    auto limit = depth_limit();
    for (std::size_t depth = count + 4;; depth *= 2) {
        std::size_t d = limit ? std::min(depth, *limit) : depth;
        auto out = cf_from_interval(enclosure(d), count);
        if (out.size() >= count) return out;
        if (limit && d >= *limit)
            throw PrecisionExhausted("theta precision exhausted after " + std::to_string(out.size()) +
                                     " continued-fraction coefficients");
    }
}

OpenInterval ThetaSource::separate(const Rational& x, unsigned rel_bits) const {
    auto limit = depth_limit();
    Rational target(Int(1), Int(1) << rel_bits);
    for (std::size_t depth = 8;; depth *= 2) {
        std::size_t d = limit ? std::min(depth, *limit) : depth;
        OpenInterval g = enclosure(d) - x;
        bool separated = g.compare(0) != 0;
        bool last = limit && d >= *limit;
        if (separated) {
            Rational small = g.lo > 0 ? g.lo : -g.hi;
            if (last || g.width() <= small * target) return g;
        } else if (last) {
            throw PrecisionExhausted("cannot separate theta from " + x.str() + " at the given precision");
        }
        if (depth > (1u << 16)) throw PrecisionExhausted("theta refinement did not converge");
    }
}

std::string ThetaSource::spec() const {
    std::ostringstream os;
    auto list = [&os](const std::vector<Int>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    };
    if (complemented_) os << "1-";
    switch (kind_) {
    case Kind::Prefix:
        os << "cf[";
        list(pre_);
        os << ",...]";
        break;
    case Kind::Periodic:
        os << "cf[";
        list(pre_);
        os << ",(";
        list(period_);
        os << ")]";
        break;
    case Kind::Decimal:
        os << "decimal[" << dec_text_ << "+-1e-" << dec_precision_ << "]";
        break;
    }
    return os.str();
}

std::uint64_t ThetaSource::digest() const {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : spec()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace orbifold
