#pragma once

#include "gafzeros/covariance.hpp"

namespace gafzeros {

/**
 * The analytic polynomial G(z) = sum_{k=1}^{n} conj(gamma(k)) z^k built
 * from a covariance sequence. G drives both the covariance kernel of the
 * random series and every correction formula: the kernel is
 * (1 + G(z) + conj(G(w))) / (1 - z conj(w)).
 */
struct GPoly {
    std::vector<cplx> coeffs;  // coeffs[k] multiplies z^k; coeffs[0] = 0

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    cplx eval(cplx z) const;
    cplx eval_derivative(cplx z) const;
};

GPoly g_poly(const Covariance& cov);

// Covariance kernel K(z, w) of the random power series, |z| < 1, |w| < 1.
// Hermitian: K(z, w) = conj(K(w, z)); reduces to the Szego kernel
// 1/(1 - z conj(w)) for the i.i.d. sequence.
cplx kernel_value(const Covariance& cov, cplx z, cplx w);

/**
 * Two infinitely dependent reference models with closed-form corrections,
 * used as independent cross-checks of the quadrature routes (they have no
 * finite spectral polynomial, so the residue route does not apply).
 *
 * Ornstein-Uhlenbeck: gamma(k) = rho^|k|, rho in (-1, 1);
 *   G(z) = rho z / (1 - rho z),
 *   correction(r) = -rho^2 r^2 / (1 - rho^2 r^2).
 * Common shock: gamma(k) = rho for all k != 0, rho in (0, 1);
 *   G(z) = rho z / (1 - z); with delta = (1 + (1-2 rho) r^2) / ((1-rho) r)
 *   and nu = (delta - sqrt(delta^2 - 4)) / 2,
 *   correction(r) = -(rho/(1-rho)) (nu - r) / ((nu - 1/nu)(1 - nu r)).
 */
struct OracleModel {
    enum class Kind { OrnsteinUhlenbeck, CommonShock };

    static OracleModel ornstein_uhlenbeck(double rho);
    static OracleModel common_shock(double rho);

    Kind kind;
    double rho;

    cplx g(cplx z) const;
    cplx g_prime(cplx z) const;
};

// Closed-form correction of an oracle model at radius r in (0, 1).
double oracle_correction(const OracleModel& model, double r);

} // namespace gafzeros
