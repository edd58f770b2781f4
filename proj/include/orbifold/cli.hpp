#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "orbifold/certificate.hpp"
#include "orbifold/theta_source.hpp"

namespace orbifold::cli {

enum ExitCode : int { kPass = 0, kClaimFailure = 1, kUsage = 2 };

nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const CertificateInputs& in);

// "0,2,2,2,2" is a finite prefix; "0,(2)" and "0,4,(1,1,2)" are eventually periodic.
ThetaSource parse_cf(const std::string& text);
// "r/s" or an integer
std::pair<std::int64_t, std::int64_t> parse_fraction(const std::string& text);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orbifold::cli
