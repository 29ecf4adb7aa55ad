#pragma once

#include <span>
#include <vector>

#include "gafzeros/covariance.hpp"

namespace gafzeros {

/**
 * Result of a simultaneous root computation. Roots are reported
 * individually (length = polynomial degree, counting multiplicity) in a
 * deterministic order: increasing argument, ties by modulus. multiplicity
 * holds cluster-size estimates; members of one cluster share the value.
 */
struct RootSet {
    std::vector<cplx> roots;
    std::vector<int> multiplicity;
    std::vector<int> inside;    // indices with |root| < 1
    double residual = 0.0;      // max |p(root)| over all roots
};

/**
 * All complex roots of p(z) = sum_k coeffs[k] z^k by the Aberth-Ehrlich
 * simultaneous iteration: initial guesses on the circle of radius
 * (|a_0 / a_d|)^(1/d) at golden-angle phases, Gauss-Seidel sweeps with
 * relative tolerance 1e-12, iteration cap 500, Newton polish. Exact zero
 * leading coefficients are trimmed; exact zero trailing coefficients
 * contribute roots at the origin. Throws DegenerateInput for the zero or
 * constant polynomial and ConvergenceError if the iteration cap is hit.
 */
RootSet poly_roots(std::span<const cplx> coeffs);

/**
 * Roots of the lifted spectral polynomial q(r, z) = z^n Theta(r, z).
 * For r < 1 a valid covariance puts exactly n roots strictly inside the
 * unit disk (n = effective order); violation raises ConvergenceError.
 * Effective order 0 yields an empty RootSet.
 */
RootSet theta_roots(const Covariance& cov, double r);

// Quality of the reciprocal-conjugate pairing of a self-inversive root set:
// greedily pairs each root w with the remaining root closest to 1/conj(w)
// and returns the worst distance. Returns 0 for empty input.
double pairing_residual(const RootSet& rs);

/**
 * Root trajectories over an increasing radius grid. Branch j holds the
 * matched root at every grid point; matching is globally greedy by
 * distance to the previous grid point, seeded at the smallest radius.
 * AmbiguousMatching is thrown when the maximal per-step motion reaches
 * half the minimal root separation, i.e. the grid is too coarse to match
 * reliably.
 */
struct BranchTrack {
    struct Label {
        bool inside_at_end = false;
        double final_abs = 0.0;
    };

    std::vector<double> r_grid;
    std::vector<std::vector<cplx>> branches;  // branches[j][m], m over r_grid
    std::vector<Label> labels;
};

BranchTrack track_branches(const Covariance& cov, std::span<const double> r_grid);

} // namespace gafzeros
