#pragma once

#include <string>

#include "gafzeros/covariance.hpp"

namespace gafzeros {

// JSON form {"n": <order>, "gamma": [[re, im], ...]} with gamma(0) first.
std::string covariance_to_json(const Covariance& cov);

// Parse and validate the JSON form above. Malformed documents raise
// DomainError; inadmissible sequences raise NotPositiveDefinite.
Covariance covariance_from_json(const std::string& text);

// Shortest decimal representation that round-trips a double (17 significant
// digits), used by every CSV writer.
std::string format_g17(double value);

} // namespace gafzeros
