#pragma once

#include <span>

namespace gafzeros {

/**
 * Extrapolate g(x) to its limit as x -> 0+ assuming an expansion
 * g(x) = c0 + c1 x^beta + c2 x^(2 beta) + ... .
 * Polynomial (Neville) extrapolation in the variable t = x^beta, evaluated
 * at t = 0. Nodes need not be uniformly spaced but must be distinct and
 * positive. Throws DomainError on malformed input.
 */
double power_law_limit(std::span<const double> x, std::span<const double> g,
                       double beta);

struct LineFit {
    double slope;
    double intercept;
};

// Least-squares straight line through (log x_i, log y_i). All x and y must
// be strictly positive and at least two points are required.
LineFit loglog_fit(std::span<const double> x, std::span<const double> y);

} // namespace gafzeros
