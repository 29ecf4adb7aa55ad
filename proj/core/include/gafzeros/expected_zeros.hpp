#pragma once

#include <limits>

#include "gafzeros/covariance.hpp"
#include "gafzeros/kernel.hpp"

namespace gafzeros {

enum class Method { Residue, ContourQuad, AreaQuad };

const char* method_name(Method m);

// Per-computation diagnostics; all fields optional output.
struct Diagnostics {
    double imag_residual = 0.0;     // |Im| discarded by the residue/contour sum
    long contour_nodes = 0;         // trapezoid nodes at convergence
    long area_evals = 0;            // integrand evaluations of the area route
    bool residue_fallback = false;  // residue route fell back to contour
    int inside_roots = -1;
    double min_inside_separation = std::numeric_limits<double>::infinity();
};

// Expected number of zeros of the i.i.d. series in |z| < r: r^2 / (1 - r^2).
double baseline(double r);

/**
 * Dependency correction J(r) <= 0 to the expected zero count, by three
 * independent routes that must agree:
 *
 *  - correction_residue: r times the sum of residues of
 *    z^n G'(rz) / q(r, z) over the n roots of q inside the unit disk.
 *    Falls back to contour quadrature (recorded in Diagnostics) when two
 *    inside roots are closer than 1e-7.
 *  - correction_contour_quad: trapezoid quadrature of
 *    (r / 2 pi) \int G'(r e^{i t}) e^{i t} / Theta(r, e^{i t}) dt with node
 *    doubling from 256 until successive estimates differ by < 1e-10
 *    (NoConvergence beyond 2^22 nodes). Also available for the oracle
 *    models.
 *  - correction_area_quad: -(1/pi) times the area integral of
 *    (|G'(z)| / Theta(|z|, z/|z|))^2 over the disk of radius r; trapezoid
 *    in angle, adaptive Gauss-Legendre radially.
 *
 * All require r in (0, 1) and return exactly 0 for the i.i.d. sequence.
 */
double correction_residue(const Covariance& cov, double r,
                          Diagnostics* diag = nullptr);
double correction_contour_quad(const Covariance& cov, double r,
                               Diagnostics* diag = nullptr);
double correction_contour_quad(const OracleModel& model, double r,
                               Diagnostics* diag = nullptr);
double correction_area_quad(const Covariance& cov, double r,
                            Diagnostics* diag = nullptr);

struct ZeroCountResult {
    double r = 0.0;
    double baseline = 0.0;
    double correction = 0.0;
    double total = 0.0;
    Method method = Method::Residue;
    Diagnostics diag;
};

// baseline(r) + correction by the chosen route.
ZeroCountResult expected_zeros(const Covariance& cov, double r, Method method);

namespace detail {
// Residue sum, also usable at r = 1 when Theta(1, .) has no unit-circle
// zeros (covariances strictly inside the admissible region); used for the
// limiting interior constant. No near-root fallback.
double residue_correction(const Covariance& cov, double r);
} // namespace detail

} // namespace gafzeros
