#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace orbifold {

struct CertificateInputs {
    std::string theta;         // ThetaSource::spec()
    std::string theta_digest;  // ThetaSource::digest()
    std::int64_t p = 0, q = 0;
    std::array<std::int64_t, 4> pj{};
    std::int64_t a = 0, b = 0, gamma = 0, c = 0, d = 0;
};

// One comparison value < threshold (strict) or value <= threshold.
struct Check {
    std::string name;
    double value = 0;
    double threshold = 0;
    bool strict = true;
    bool pass = false;
};

// pass is the conjunction of the recorded checks; an empty certificate does not pass.
struct Certificate {
    std::string claim;
    std::optional<CertificateInputs> inputs;
    std::map<std::string, double> values;
    std::vector<Check> checks;
    double threshold = 0;
    double tolerance = 0;
    double tail_budget = 0;
    std::string notes;
    bool pass = false;
    bool skipped = false;  // not evaluated (size limit); excluded from bundle verdicts

    bool check(const std::string& name, double value, double threshold, bool strict = true);
    bool require(const std::string& name, bool ok);
    void finish();
    double worst_margin() const;  // max over checks of value - threshold
};

}  // namespace orbifold
