#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orbifold/exact.hpp"

namespace orbifold {

// Open rational interval (lo, hi) known to contain an irrational.
struct OpenInterval {
    Rational lo, hi;
    bool hi_inf = false;  // (lo, +inf); hi is then meaningless

    // -1: every point < x, +1: every point > x, 0: x may lie inside (undecidable)
    int compare(const Rational& x) const;
    OpenInterval operator-(const Rational& x) const { return {lo - x, hi - x, hi_inf}; }
    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
};

// CF coefficients consumed from an open interval until the interval no longer
// pins the next floor.
std::vector<Int> cf_from_interval(OpenInterval iv, std::size_t max_count);

// A real theta in (0,1), known exactly through shrinking open enclosures.
// Sources: finite CF prefix of an irrational, eventually periodic CF, or a
// decimal string with stated precision. complement() gives 1 - theta.
class ThetaSource {
public:
    static ThetaSource cf(std::vector<Int> coeffs);
    static ThetaSource periodic(std::vector<Int> pre, std::vector<Int> period);
    static ThetaSource decimal(const std::string& digits, int precision);

    ThetaSource complement() const;
    bool complemented() const { return complemented_; }

    // Enclosure using the first `depth` CF coefficients (clamped to what is known).
    OpenInterval enclosure(std::size_t depth) const;
    // Largest useful depth; nullopt when unbounded (periodic).
    std::optional<std::size_t> depth_limit() const;

    // First `count` CF coefficients of theta (of 1 - theta when complemented).
    std::vector<Int> coefficients(std::size_t count) const;

    // Refine until `x` is separated from theta, with relative gap resolution
    // `rel_bits`. Returns the enclosure of theta - x. Throws PrecisionExhausted.
    OpenInterval separate(const Rational& x, unsigned rel_bits = 96) const;

    std::string spec() const;
    std::uint64_t digest() const;

private:
    enum class Kind { Prefix, Periodic, Decimal };
    Kind kind_ = Kind::Prefix;
    std::vector<Int> pre_, period_;
    Rational dec_value_;
    int dec_precision_ = 0;
    std::string dec_text_;
    bool complemented_ = false;

    Int raw_coefficient(std::size_t i) const;
    std::size_t raw_known() const;
    OpenInterval raw_enclosure(std::size_t depth) const;
};

}  // namespace orbifold
