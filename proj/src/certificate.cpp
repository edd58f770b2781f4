#include "orbifold/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orbifold {

bool Certificate::check(const std::string& name, double value, double thr, bool strict) {
    bool ok = std::isfinite(value) && (strict ? value < thr : value <= thr);
    checks.push_back({name, value, thr, strict, ok});
    return ok;
}

bool Certificate::require(const std::string& name, bool ok) {
    checks.push_back({name, ok ? 0.0 : 1.0, 0.0, false, ok});
    return ok;
}

void Certificate::finish() {
    pass = !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

double Certificate::worst_margin() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& c : checks) m = std::max(m, c.value - c.threshold);
    return m;
}

}  // namespace orbifold
