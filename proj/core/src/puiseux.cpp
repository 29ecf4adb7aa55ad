#include "gafzeros/puiseux.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gafzeros/errors.hpp"
#include "gafzeros/expected_zeros.hpp"
#include "gafzeros/rootfind.hpp"
#include "poly_util.hpp"

namespace gafzeros {

namespace {

using detail::binom;
using detail::cplx;

double ellipse_gap(double a, double b) {
    return a * a / 8.0 + (b - 0.25) * (b - 0.25) - 1.0 / 16.0;
}

void require_branch_order(int n) {
    if (n < 1) throw DomainError("dependence order must be at least 1");
    if (n > 32) throw DomainError("dependence order too large");
}

} // namespace

const char* case_label_name(CaseLabel label) {
    switch (label) {
        case CaseLabel::CaseI: return "ellipse-boundary";
        case CaseLabel::CaseII: return "line-boundary";
        case CaseLabel::CaseIII: return "corner-degenerate";
        case CaseLabel::CaseIV: return "interior";
        case CaseLabel::Binomial: return "binomial";
        case CaseLabel::GeneralMultiplicity: return "general-multiplicity";
    }
    return "unknown";
}

std::vector<PuiseuxBranch> puiseux_branches(int n) {
    require_branch_order(n);
    const double mag =
        std::pow(2.0 * binom(2 * (n - 1), n - 1), 1.0 / (2.0 * n));
    std::vector<PuiseuxBranch> out;
    out.reserve(2 * static_cast<std::size_t>(n));
    for (int j = 0; j < 2 * n; ++j) {
        const double phase = (2.0 * j - n + 1.0) * detail::kPi / (2.0 * n);
        const cplx b = std::polar(mag, phase);
        out.push_back({n, j, b, -0.5 * b * b});
    }
    return out;
}

cplx predicted_root(int n, int j, double r) {
    require_branch_order(n);
    if (j < 0 || j >= 2 * n) throw DomainError("branch index out of range");
    if (!(r > 0.0 && r < 1.0)) throw DomainError("radius must lie in (0, 1)");
    const std::vector<PuiseuxBranch> br = puiseux_branches(n);
    const PuiseuxBranch& pb = br[static_cast<std::size_t>(j)];
    const double t = std::pow(1.0 - r, 1.0 / (2.0 * n));
    return -1.0 + pb.b * t + pb.second * t * t;
}

double dn_constant(int n) {
    require_branch_order(n);
    return std::pow(binom(2 * (n - 1), n - 1), 1.0 / (2.0 * n))
         / (2.0 * n * std::sin(detail::kPi / (2.0 * n)));
}

double interior_constant(double a, double b) {
    const RegionLabel label = classify_region(a, b, 1e-12);
    if (label == RegionLabel::Outside)
        throw OutsideRegion("point lies outside the admissible region");
    if (label != RegionLabel::Interior)
        throw DomainError("limit constant is finite only in the interior");
    if (a == 0.0 && b == 0.0) return 0.0;

    const double aa = std::abs(a);
    if (aa > 0.0 && ellipse_gap(aa, b) < -1e-12 && b > 0.0) {
        const double lambda = std::sqrt(4.0 * b - 8.0 * b * b - aa * aa);
        const double mu =
            std::sqrt((1.0 + 2.0 * b) * (1.0 + 2.0 * b) - 4.0 * aa * aa);
        const double inner = 4.0 * b * b + 2.0 * b - aa * aa + 2.0 * b * mu;
        const double c =
            (mu - (2.0 * b - 1.0)) * std::sqrt(inner) / (2.0 * lambda * mu) - 1.0;
        return c;
    }
    // Elsewhere in the interior the limit equals minus the residue sum at
    // the unit radius.
    double c = -detail::residue_correction(Covariance::two_dependent(a, b), 1.0);
    if (c < 0.0) {
        if (c < -1e-9)
            throw ConvergenceError("limit constant evaluated negative");
        c = 0.0;
    }
    return c;
}

AsymptoticPrediction case_prediction(double a, double b, double tol) {
    const RegionLabel label = classify_region(a, b, tol);
    switch (label) {
        case RegionLabel::Outside:
            throw OutsideRegion("point lies outside the admissible region");
        case RegionLabel::CornerDegenerate:
            return {{3, 4}, std::pow(2.0, -1.25), CaseLabel::CaseIII, 2};
        case RegionLabel::BoundaryEllipse:
            return {{1, 2},
                    std::sqrt(2.0 * b / (6.0 * b - 1.0)),
                    CaseLabel::CaseI, 1};
        case RegionLabel::BoundaryLine:
            return {{1, 2},
                    0.5 * std::sqrt((1.0 - 2.0 * b) / (1.0 - 6.0 * b)),
                    CaseLabel::CaseII, 1};
        case RegionLabel::Interior:
            return {{0, 1}, interior_constant(a, b), CaseLabel::CaseIV, 0};
    }
    throw DomainError("unreachable region label");
}

AsymptoticPrediction general_exponent(const Covariance& cov) {
    const int n = cov.effective_order();
    if (n == 0)
        return {{0, 1}, 0.0, CaseLabel::GeneralMultiplicity, 0};
    if (const auto bin = cov.as_binomial())
        return {{2 * *bin - 1, 2 * *bin}, dn_constant(*bin), CaseLabel::Binomial,
                *bin};
    if (const auto td = cov.as_two_dependent())
        return case_prediction(td->first, td->second, 1e-12);

    const SpectralPoly sp = spectral_poly(cov, 1.0);
    const RootSet rs = poly_roots(sp.lift);
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < rs.roots.size(); ++i)
        if (std::abs(std::abs(rs.roots[i]) - 1.0) < 0.02) cand.push_back(i);
    if (cand.empty()) return {{0, 1}, std::nullopt, CaseLabel::GeneralMultiplicity, 0};

    std::sort(cand.begin(), cand.end(), [&](std::size_t x, std::size_t y) {
        return std::arg(rs.roots[x]) < std::arg(rs.roots[y]);
    });
    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t idx : cand) {
        const double ang = std::arg(rs.roots[idx]);
        if (!clusters.empty()
            && ang - std::arg(rs.roots[clusters.back().back()]) <= 0.05) {
            clusters.back().push_back(idx);
            continue;
        }
        clusters.push_back({idx});
    }
    if (clusters.size() > 1) {
        const double first = std::arg(rs.roots[clusters.front().front()]);
        const double last = std::arg(rs.roots[clusters.back().back()]);
        if (first + detail::kTwoPi - last <= 0.05) {
            for (std::size_t idx : clusters.front())
                clusters.back().push_back(idx);
            clusters.erase(clusters.begin());
        }
    }

    int max_half = 0;
    for (const auto& cl : clusters) {
        cplx centroid = 0.0;
        for (std::size_t idx : cl) centroid += rs.roots[idx];
        centroid /= static_cast<double>(cl.size());
        // Accept a cluster only if the spectral density really vanishes there.
        if (sp.eval_circle(std::arg(centroid)) > 1e-6) continue;
        if (cl.size() % 2 != 0)
            throw OddMultiplicity("odd circle zero cluster in the lift");
        max_half = std::max(max_half, static_cast<int>(cl.size()) / 2);
    }
    if (max_half == 0)
        return {{0, 1}, std::nullopt, CaseLabel::GeneralMultiplicity, 0};
    return {{2 * max_half - 1, 2 * max_half}, std::nullopt,
            CaseLabel::GeneralMultiplicity, max_half};
}

IdentityReport identity_checks(int n) {
    require_branch_order(n);
    IdentityReport rep;
    rep.n = n;
    cplx sum = 0.0, sum_sq = 0.0;
    std::vector<cplx> phases;
    phases.reserve(2 * static_cast<std::size_t>(n));
    for (int k = 0; k < 2 * n; ++k) {
        const cplx e =
            std::polar(1.0, (2.0 * k - n + 1.0) * detail::kPi / (2.0 * n));
        phases.push_back(e);
        if (k < n) {
            sum += e;
            sum_sq += e * e;
        }
    }
    rep.sum_residual = std::abs(sum - 1.0 / std::sin(detail::kPi / (2.0 * n)));
    // sum of squared inside phases vanishes for n >= 2 and equals 1 for n == 1
    const cplx sq_target = n >= 2 ? cplx(0.0) : cplx(1.0);
    rep.sum_sq_residual = std::abs(sum_sq - sq_target);
    rep.sum_sq_cancels = n >= 2;
    rep.product_residual = 0.0;
    for (int k = 0; k < 2 * n; ++k) {
        cplx prod = 1.0;
        for (int j = 0; j < 2 * n; ++j)
            if (j != k) prod *= phases[static_cast<std::size_t>(k)]
                              - phases[static_cast<std::size_t>(j)];
        const cplx want = 2.0 * n * (n % 2 == 1 ? 1.0 : -1.0)
                        / phases[static_cast<std::size_t>(k)];
        rep.product_residual =
            std::max(rep.product_residual, std::abs(prod - want));
    }
    return rep;
}

} // namespace gafzeros
