#include "gafzeros/kernel.hpp"

#include <cmath>

#include "gafzeros/errors.hpp"
#include "poly_util.hpp"

namespace gafzeros {

using detail::cplx;

cplx GPoly::eval(cplx z) const { return detail::eval_poly(coeffs, z); }

cplx GPoly::eval_derivative(cplx z) const {
    cplx dp = 0.0;
    for (int k = degree(); k >= 1; --k)
        dp = dp * z + static_cast<double>(k) * coeffs[static_cast<std::size_t>(k)];
    return dp;
}

GPoly g_poly(const Covariance& cov) {
    const int n = cov.effective_order();
    GPoly g;
    g.coeffs.assign(static_cast<std::size_t>(n) + 1, cplx(0.0));
    for (int k = 1; k <= n; ++k)
        g.coeffs[static_cast<std::size_t>(k)] = std::conj(cov.gamma(k));
    return g;
}

cplx kernel_value(const Covariance& cov, cplx z, cplx w) {
    if (!(std::abs(z) < 1.0) || !(std::abs(w) < 1.0))
        throw DomainError("kernel arguments must lie strictly inside the disk");
    const GPoly g = g_poly(cov);
    const cplx numer = 1.0 + g.eval(z) + std::conj(g.eval(w));
    return numer / (1.0 - z * std::conj(w));
}

OracleModel OracleModel::ornstein_uhlenbeck(double rho) {
    if (!(rho > 0.0 && rho < 1.0))
        throw DomainError("geometric decay rate must lie in (0, 1)");
    return {Kind::OrnsteinUhlenbeck, rho};
}

OracleModel OracleModel::common_shock(double rho) {
    if (!(rho > 0.0 && rho < 1.0))
        throw DomainError("shock weight must lie in (0, 1)");
    return {Kind::CommonShock, rho};
}

cplx OracleModel::g(cplx z) const {
    switch (kind) {
        case Kind::OrnsteinUhlenbeck: return rho * z / (1.0 - rho * z);
        case Kind::CommonShock: return rho * z / (1.0 - z);
    }
    return 0.0;
}

cplx OracleModel::g_prime(cplx z) const {
    switch (kind) {
        case Kind::OrnsteinUhlenbeck: {
            const cplx d = 1.0 - rho * z;
            return rho / (d * d);
        }
        case Kind::CommonShock: {
            const cplx d = 1.0 - z;
            return rho / (d * d);
        }
    }
    return 0.0;
}

double oracle_correction(const OracleModel& model, double r) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("radius must lie in (0, 1)");
    switch (model.kind) {
        case OracleModel::Kind::OrnsteinUhlenbeck: {
            const double s = model.rho * model.rho * r * r;
            return -s / (1.0 - s);
        }
        case OracleModel::Kind::CommonShock: {
            const double rho = model.rho;
            const double delta = (1.0 + (1.0 - 2.0 * rho) * r * r) / ((1.0 - rho) * r);
            const double gap = std::sqrt(delta * delta - 4.0);
            const double nu = (delta - gap) / 2.0;
            // nu - 1/nu == -gap for the smaller quadratic root
            return -(rho / (1.0 - rho)) * (nu - r) / (-gap * (1.0 - nu * r));
        }
    }
    return 0.0;
}

} // namespace gafzeros
