#include "gafzeros/expected_zeros.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "gafzeros/errors.hpp"
#include "gafzeros/kernel.hpp"
#include "gafzeros/rootfind.hpp"
#include "poly_util.hpp"

namespace gafzeros {

namespace {

using detail::cplx;

constexpr double kQuadTol = 1e-10;
constexpr long kQuadStart = 256;
constexpr long kQuadCap = 1L << 22;

// Trapezoid mean over [0, 2pi) with node doubling; each doubling reuses the
// previous sum, so M nodes cost M evaluations in total.
cplx periodic_mean(const std::function<cplx(double)>& f, double tol,
                   long start, long cap, long* nodes_out) {
    long m = start;
    cplx sum = 0.0;
    for (long k = 0; k < m; ++k)
        sum += f(detail::kTwoPi * static_cast<double>(k) / static_cast<double>(m));
    cplx mean = sum / static_cast<double>(m);
    while (m < cap) {
        cplx odd = 0.0;
        for (long k = 0; k < m; ++k)
            odd += f(detail::kTwoPi * (static_cast<double>(k) + 0.5)
                     / static_cast<double>(m));
        const cplx refined = 0.5 * (mean + odd / static_cast<double>(m));
        m *= 2;
        if (std::abs(refined - mean) < tol) {
            if (nodes_out) *nodes_out = m;
            return refined;
        }
        mean = refined;
    }
    throw NoConvergence("circle quadrature failed to stabilize");
}

double contour_impl(const std::function<cplx(cplx)>& g,
                    const std::function<cplx(cplx)>& gp, double r,
                    Diagnostics* diag) {
    auto f = [&](double theta) -> cplx {
        const cplx z = std::polar(1.0, theta);
        const cplx rz = r * z;
        const double theta_val = 1.0 + 2.0 * g(rz).real();
        if (!(theta_val > 0.0))
            throw ConvergenceError("spectral density not positive on the circle");
        return gp(rz) * z / theta_val;
    };
    long nodes = 0;
    const cplx mean = periodic_mean(f, kQuadTol, kQuadStart, kQuadCap, &nodes);
    const cplx correction = r * mean;
    if (diag) {
        diag->contour_nodes = nodes;
        diag->imag_residual = std::abs(correction.imag());
    }
    if (std::abs(correction.imag()) >= kQuadTol)
        throw ConvergenceError(
            "contour quadrature returned a non-real correction");
    return correction.real();
}

void require_open_radius(double r) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("radius must lie in (0, 1)");
}

double residue_impl(const Covariance& cov, double r, Diagnostics* diag) {
    const int n = cov.effective_order();
    if (n == 0) {
        if (diag) diag->inside_roots = 0;
        return 0.0;
    }
    const RootSet rs = theta_roots(cov, r);
    if (static_cast<int>(rs.inside.size()) != n)
        throw ConvergenceError(
            "inside root count does not match the dependence order");
    double min_sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rs.inside.size(); ++i)
        for (std::size_t j = i + 1; j < rs.inside.size(); ++j)
            min_sep = std::min(min_sep,
                               std::abs(rs.roots[static_cast<std::size_t>(rs.inside[i])]
                                        - rs.roots[static_cast<std::size_t>(rs.inside[j])]));
    if (diag) {
        diag->inside_roots = n;
        diag->min_inside_separation = min_sep;
    }
    if (min_sep < 1e-7)
        throw NearMultipleRoot(
            "inside roots too close for the residue formula");

    const SpectralPoly sp = spectral_poly(cov, r);
    const std::vector<cplx> dlift = detail::differentiate(sp.lift);
    const GPoly g = g_poly(cov);
    cplx acc = 0.0;
    for (int idx : rs.inside) {
        const cplx z = rs.roots[static_cast<std::size_t>(idx)];
        const cplx denom = detail::eval_poly(dlift, z);
        if (denom == cplx(0.0))
            throw NearMultipleRoot("vanishing derivative at an inside root");
        acc += detail::pow_int(z, n) * g.eval_derivative(r * z) / denom;
    }
    const cplx correction = r * acc;
    if (diag) diag->imag_residual = std::abs(correction.imag());
    // Relative to the correction size: deep in the r -> 1 regime the terms
    // grow like (1 - r^2)^{-3/4} and their conjugate cancellation is only
    // accurate to machine precision times that scale.
    if (std::abs(correction.imag())
        >= 1e-9 * std::max(1.0, std::abs(correction.real())))
        throw ConvergenceError("residue sum returned a non-real correction");
    return correction.real();
}

// Legendre nodes and weights on [-1, 1], computed by Newton iteration on the
// Legendre recurrence from the Chebyshev initial guess.
struct GaussRule {
    std::vector<double> node;
    std::vector<double> weight;
};

GaussRule gauss_legendre(int n) {
    GaussRule rule;
    rule.node.resize(static_cast<std::size_t>(n));
    rule.weight.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(detail::kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        rule.node[static_cast<std::size_t>(i)] = x;
        rule.weight[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

double panel_integral(const GaussRule& rule,
                      const std::function<double(double)>& f, double a,
                      double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.node.size(); ++i)
        acc += rule.weight[i] * f(mid + half * rule.node[i]);
    return acc * half;
}

double adaptive_radial(const std::function<double(double)>& f, double a,
                       double b, double tol_abs, int depth,
                       const GaussRule& g8, const GaussRule& g16) {
    const double coarse = panel_integral(g8, f, a, b);
    const double fine = panel_integral(g16, f, a, b);
    if (std::abs(fine - coarse) <= tol_abs) return fine;
    if (depth >= 24)
        throw NoConvergence("radial quadrature failed to stabilize");
    const double mid = 0.5 * (a + b);
    return adaptive_radial(f, a, mid, 0.5 * tol_abs, depth + 1, g8, g16)
         + adaptive_radial(f, mid, b, 0.5 * tol_abs, depth + 1, g8, g16);
}

} // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::Residue: return "residue";
        case Method::ContourQuad: return "contour";
        case Method::AreaQuad: return "area";
    }
    return "unknown";
}

double baseline(double r) {
    require_open_radius(r);
    return r * r / (1.0 - r * r);
}

double correction_residue(const Covariance& cov, double r, Diagnostics* diag) {
    require_open_radius(r);
    try {
        return residue_impl(cov, r, diag);
    } catch (const NearMultipleRoot&) {
        if (diag) diag->residue_fallback = true;
        return correction_contour_quad(cov, r, diag);
    }
}

namespace detail {

double residue_correction(const Covariance& cov, double r) {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("radius must lie in (0, 1]");
    return residue_impl(cov, r, nullptr);
}

} // namespace detail

double correction_contour_quad(const Covariance& cov, double r,
                               Diagnostics* diag) {
    require_open_radius(r);
    if (cov.effective_order() == 0) return 0.0;
    const GPoly g = g_poly(cov);
    return contour_impl([&](cplx z) { return g.eval(z); },
                        [&](cplx z) { return g.eval_derivative(z); }, r, diag);
}

double correction_contour_quad(const OracleModel& model, double r,
                               Diagnostics* diag) {
    require_open_radius(r);
    return contour_impl([&](cplx z) { return model.g(z); },
                        [&](cplx z) { return model.g_prime(z); }, r, diag);
}

double correction_area_quad(const Covariance& cov, double r,
                            Diagnostics* diag) {
    require_open_radius(r);
    if (cov.effective_order() == 0) return 0.0;
    const GPoly g = g_poly(cov);
    long evals = 0;
    auto ring_mean = [&](double rho) -> double {
        if (rho == 0.0) {
            ++evals;
            const cplx d0 = g.eval_derivative(0.0);
            return std::norm(d0); // Theta(0, z) == 1
        }
        auto f = [&](double theta) -> cplx {
            ++evals;
            const cplx z = std::polar(rho, theta);
            const double theta_val = 1.0 + 2.0 * g.eval(z).real();
            if (!(theta_val > 0.0))
                throw ConvergenceError(
                    "spectral density not positive inside the disk");
            const double q = std::abs(g.eval_derivative(z)) / theta_val;
            return q * q;
        };
        return periodic_mean(f, 1e-11, 64, 1L << 20, nullptr).real();
    };
    auto radial = [&](double rho) { return rho * ring_mean(rho); };

    static const GaussRule g8 = gauss_legendre(8);
    static const GaussRule g16 = gauss_legendre(16);
    const double rough = std::abs(panel_integral(g16, radial, 0.0, r));
    const double tol_abs = 1e-9 * std::max(1.0, rough);
    const double integral =
        adaptive_radial(radial, 0.0, r, tol_abs, 0, g8, g16);
    if (diag) {
        diag->area_evals = evals;
        diag->imag_residual = 0.0;
    }
    // -(1/pi) * 2*pi * integral of rho * ring mean
    return -2.0 * integral;
}

ZeroCountResult expected_zeros(const Covariance& cov, double r, Method method) {
    ZeroCountResult res;
    res.r = r;
    res.method = method;
    res.baseline = baseline(r);
    switch (method) {
        case Method::Residue:
            res.correction = correction_residue(cov, r, &res.diag);
            break;
        case Method::ContourQuad:
            res.correction = correction_contour_quad(cov, r, &res.diag);
            break;
        case Method::AreaQuad:
            res.correction = correction_area_quad(cov, r, &res.diag);
            break;
    }
    res.total = res.baseline + res.correction;
    return res;
}

} // namespace gafzeros
