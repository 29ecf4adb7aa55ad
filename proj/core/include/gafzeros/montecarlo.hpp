#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "gafzeros/covariance.hpp"

namespace gafzeros {

struct McConfig {
    int truncation = 400;      // series truncated after z^truncation; >= 50
    long trials = 1000;        // >= 1
    std::uint64_t seed = 0;
    double r = 0.8;            // counting radius, (0, 0.95]
    int threads = 1;
    bool diagnostics = false;  // argument-principle cross-check per trial
};

struct MonteCarloReport {
    double mean = 0.0;
    double stderr_mean = 0.0;   // sample standard deviation / sqrt(trials)
    long trials = 0;
    int truncation = 0;
    std::uint64_t seed = 0;
    double r = 0.0;
    double tail_bound = 0.0;    // truncation error bound on the mean
    bool degenerate = false;    // single trial: stderr not estimable
    long resampled = 0;         // trials redrawn due to a root on the circle
    long winding_checked = 0;   // diagnostics mode only
    long winding_disagreements = 0;
};

/**
 * First `count` coefficients xi_0..xi_{count-1} of the dependent sequence
 * xi_k = sum_j taps[j] zeta_{k-j}, driven by i.i.d. standard complex
 * Gaussians zeta indexed by the deterministic stream (seed, stream).
 * A fixed (seed, stream) fully determines the output; different streams
 * never share driving noise.
 */
std::vector<cplx> sample_coefficients(const MAFilter& filter, int count,
                                      std::uint64_t seed,
                                      std::uint64_t stream = 0);

/**
 * Number of roots of sum_k coeffs[k] z^k with |z| < r, counted from the
 * full root set. Throws ZeroOnCircle if a root lies within 1e-12 of the
 * counting circle.
 */
int count_zeros_in_disk(std::span<const cplx> coeffs, double r);

// Argument-principle winding number of the polynomial along |z| = r by
// trapezoid quadrature of p'/p with node doubling; nullopt when the
// estimate does not stabilize (a root too close to the circle).
std::optional<int> winding_number(std::span<const cplx> coeffs, double r);

// Bound on the change of the expected count in |z| < r when the series is
// truncated after z^N: r^(2N+2) (n+1) / (1 - r^2).
double truncation_tail_bound(const Covariance& cov, int truncation, double r);

/**
 * Empirical expected zero count over independent trials. Trial t draws its
 * coefficients from substream t of the seed, so results are bit-identical
 * for a fixed (covariance, config) regardless of thread count and order of
 * execution. A trial whose polynomial has a root on the counting circle is
 * redrawn from a fresh substream (counted in the report).
 */
MonteCarloReport empirical_expected_zeros(const Covariance& cov,
                                          const McConfig& config);

} // namespace gafzeros
