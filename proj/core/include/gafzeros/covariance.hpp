#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "gafzeros/errors.hpp"

namespace gafzeros {

using cplx = std::complex<double>;

/**
 * Covariance sequence of a finitely dependent stationary sequence of
 * standard complex Gaussian coefficients: gamma(0) = 1, gamma(k) for
 * 1 <= k <= n, extended by Hermitian symmetry gamma(-k) = conj(gamma(k)),
 * and gamma(k) = 0 for |k| > n.
 *
 * Construction validates positive definiteness. The two-parameter family
 * gamma = (1, a, b) with real a, b is validated against the closed-form
 * admissible region; general sequences are validated by a dense grid check
 * of the spectral density on the unit circle.
 */
class Covariance {
public:
    // Real 2-dependent family gamma(1) = a, gamma(2) = b.
    // Throws NotPositiveDefinite if (a, b) lies outside the admissible region.
    static Covariance two_dependent(double a, double b);

    // gamma_n(k) = C(2n, n+k) / C(2n, n), the n-fold binomial moving-average
    // family; positive definite for every n >= 1.
    static Covariance binomial(int n);

    // General sequence gamma[0..n] with gamma[0] = 1. Validates |gamma(k)| <= 1
    // and nonnegativity of the spectral density on a 4096-point circle grid
    // (tolerance -1e-10). Throws NotPositiveDefinite on failure.
    static Covariance from_gamma(std::vector<cplx> gamma);

    // Largest stored lag n.
    int order() const { return static_cast<int>(gamma_.size()) - 1; }

    // Largest lag with gamma(k) != 0 (exact zero test); 0 for i.i.d.
    int effective_order() const;

    // gamma(k) for any integer k, Hermitian extension, zero beyond the order.
    cplx gamma(int k) const;

    const std::vector<cplx>& coefficients() const { return gamma_; }

    // True when every stored gamma(k) has exactly zero imaginary part.
    bool is_real() const;

    // (a, b) when this is a real sequence with effective order <= 2.
    std::optional<std::pair<double, double>> as_two_dependent() const;

    // n when the sequence matches the binomial family within tol.
    std::optional<int> as_binomial(double tol = 1e-12) const;

private:
    explicit Covariance(std::vector<cplx> gamma) : gamma_(std::move(gamma)) {}

    std::vector<cplx> gamma_;
};

// Admissible region of the two-parameter family: union of the closed
// ellipse a^2/8 + (b - 1/4)^2 <= 1/16 and the closed triangle
// |a| - 1/2 <= b <= 1/6. Membership is tested with an absolute slack on
// both defining inequalities so that decimal approximations of boundary
// points validate.
bool in_region(double a, double b, double slack = 1e-9);

enum class RegionLabel {
    Interior,
    BoundaryEllipse,   // a^2/8 + (b-1/4)^2 = 1/16, 1/6 < b <= 1/2
    BoundaryLine,      // b = |a| - 1/2, -1/2 <= b < 1/6
    CornerDegenerate,  // (+-2/3, 1/6)
    Outside,
};

const char* region_label_name(RegionLabel label);

// Classify (a, b) against the admissible region. Boundary membership is
// decided by |defining expression| <= tol; the Interior/Outside split uses
// the in_region slack.
RegionLabel classify_region(double a, double b, double tol = 1e-12);

/**
 * Spectral symbol at radius r: the Laurent polynomial
 *   Theta(r, z) = sum_{k=-n}^{n} c_k z^k,
 * c_0 = 1, c_k = conj(gamma(k)) r^k for k > 0, c_{-k} = conj(c_k), where n
 * is the effective order. On |z| = 1 it equals the (real) spectral density
 * of the damped sequence; at r = 1 it is the spectral density itself.
 * lift holds the coefficients of q(r, z) = z^n Theta(r, z), a degree-2n
 * polynomial with q(0) != 0 and the self-inversive symmetry
 * lift[2n-j] = conj(lift[j]).
 */
struct SpectralPoly {
    double r = 1.0;
    int order = 0;                // effective order n
    std::vector<cplx> laurent;    // c_{-n} .. c_{n}
    std::vector<cplx> lift;       // q coefficients, degree 2n, ascending

    // Theta(r, e^{i theta}); real by Hermitian symmetry.
    double eval_circle(double theta) const;
};

// Requires r in (0, 1].
SpectralPoly spectral_poly(const Covariance& cov, double r);

// Minimum of Theta(r, e^{i theta}) over a uniform grid.
double min_spectral_density(const Covariance& cov, double r, int grid = 4096);

/**
 * Moving-average filter: xi_k = sum_j taps[j] zeta_{k-j} over i.i.d.
 * standard complex Gaussians zeta reproduces the covariance,
 * sum_j taps[j+k] conj(taps[j]) = gamma(k).
 */
struct MAFilter {
    std::vector<cplx> taps;

    int order() const { return static_cast<int>(taps.size()) - 1; }

    // max_k |sum_j taps[j] conj(taps[j+k]) - gamma(k)|
    double roundtrip_residual(const Covariance& cov) const;
};

/**
 * Spectral factorization Theta(1, e^{i theta}) = |P(e^{i theta})|^2 with
 * P(z) = sum_j taps[j] z^j of degree equal to the effective order.
 * Roots of the lifted spectral density come in reciprocal-conjugate pairs
 * {w, 1/conj(w)}; the factor takes the member inside the closed disk, and
 * unit-circle zeros (even multiplicity for a valid covariance) are split
 * evenly. Throws FactorizationError when the root structure is inconsistent.
 */
MAFilter spectral_factorize(const Covariance& cov);

} // namespace gafzeros
