#include "gafzeros/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "gafzeros/errors.hpp"
#include "gafzeros/rootfind.hpp"
#include "poly_util.hpp"

namespace gafzeros {

namespace {

using detail::binom;
using detail::cdiv;
using detail::cplx;

double ellipse_gap(double a, double b) {
    return a * a / 8.0 + (b - 0.25) * (b - 0.25) - 1.0 / 16.0;
}

double line_gap(double a, double b) {
    return b - (std::abs(a) - 0.5);
}

void require_finite(double v, const char* name) {
    if (!std::isfinite(v))
        throw DomainError(std::string(name) + " must be finite");
}

} // namespace

bool in_region(double a, double b, double slack) {
    if (ellipse_gap(a, b) <= slack) return true;
    return line_gap(a, b) >= -slack && b <= 1.0 / 6.0 + slack;
}

const char* region_label_name(RegionLabel label) {
    switch (label) {
        case RegionLabel::Interior: return "interior";
        case RegionLabel::BoundaryEllipse: return "boundary-ellipse";
        case RegionLabel::BoundaryLine: return "boundary-line";
        case RegionLabel::CornerDegenerate: return "corner-degenerate";
        case RegionLabel::Outside: return "outside";
    }
    return "unknown";
}

RegionLabel classify_region(double a, double b, double tol) {
    require_finite(a, "a");
    require_finite(b, "b");
    if (!(tol >= 0.0)) throw DomainError("tol must be nonnegative");
    const double eg = ellipse_gap(a, b);
    const double lg = line_gap(a, b);
    if (std::abs(eg) <= tol && std::abs(lg) <= tol)
        return RegionLabel::CornerDegenerate;
    if (std::abs(eg) <= tol && b > 1.0 / 6.0)
        return RegionLabel::BoundaryEllipse;
    if (std::abs(lg) <= tol && b < 1.0 / 6.0 && b >= -0.5 - tol)
        return RegionLabel::BoundaryLine;
    if (in_region(a, b, tol)) return RegionLabel::Interior;
    return RegionLabel::Outside;
}

Covariance Covariance::two_dependent(double a, double b) {
    require_finite(a, "a");
    require_finite(b, "b");
    if (!in_region(a, b))
        throw NotPositiveDefinite(
            "two-dependent covariance (a, b) outside the admissible region");
    return Covariance({cplx(1.0), cplx(a), cplx(b)});
}

Covariance Covariance::binomial(int n) {
    if (n < 1) throw DomainError("binomial parameter must be at least 1");
    if (n > 25) throw DomainError("binomial parameter too large");
    std::vector<cplx> g(static_cast<std::size_t>(n) + 1);
    const double central = binom(2 * n, n);
    g[0] = 1.0;
    for (int k = 1; k <= n; ++k) g[k] = binom(2 * n, n + k) / central;
    return Covariance(std::move(g));
}

Covariance Covariance::from_gamma(std::vector<cplx> gamma) {
    if (gamma.empty()) throw DomainError("gamma sequence must be nonempty");
    if (gamma.size() > 65) throw DomainError("dependence order too large");
    for (const cplx& g : gamma) {
        if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
            throw DomainError("gamma values must be finite");
    }
    if (std::abs(gamma[0] - cplx(1.0)) > 1e-12)
        throw DomainError("gamma(0) must equal 1");
    gamma[0] = 1.0;
    for (std::size_t k = 1; k < gamma.size(); ++k) {
        if (std::abs(gamma[k]) > 1.0 + 1e-12)
            throw NotPositiveDefinite("|gamma(k)| exceeds gamma(0)");
    }
    Covariance cov(std::move(gamma));
    if (min_spectral_density(cov, 1.0) < -1e-10)
        throw NotPositiveDefinite(
            "spectral density is negative on the unit circle");
    return cov;
}

int Covariance::effective_order() const {
    int n = order();
    while (n > 0 && gamma_[static_cast<std::size_t>(n)] == cplx(0.0)) --n;
    return n;
}

cplx Covariance::gamma(int k) const {
    const int a = std::abs(k);
    if (a > order()) return 0.0;
    const cplx g = gamma_[static_cast<std::size_t>(a)];
    return k >= 0 ? g : std::conj(g);
}

bool Covariance::is_real() const {
    for (const cplx& g : gamma_)
        if (g.imag() != 0.0) return false;
    return true;
}

std::optional<std::pair<double, double>> Covariance::as_two_dependent() const {
    if (!is_real() || effective_order() > 2) return std::nullopt;
    return std::make_pair(gamma(1).real(), gamma(2).real());
}

std::optional<int> Covariance::as_binomial(double tol) const {
    const int n = effective_order();
    if (n < 1 || n > 25) return std::nullopt;
    const double central = binom(2 * n, n);
    for (int k = 1; k <= n; ++k) {
        const cplx want = binom(2 * n, n + k) / central;
        if (std::abs(gamma(k) - want) > tol) return std::nullopt;
    }
    return n;
}

double SpectralPoly::eval_circle(double theta) const {
    // Theta(r, e^{i theta}) = 1 + 2 Re sum_{k>=1} conj(gamma(k)) r^k e^{ik theta}
    const cplx z = std::polar(1.0, theta);
    cplx acc = 0.0;
    for (int k = order; k >= 1; --k)
        acc = acc * z + laurent[static_cast<std::size_t>(order + k)];
    acc *= z;
    return 1.0 + 2.0 * acc.real();
}

SpectralPoly spectral_poly(const Covariance& cov, double r) {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("radius must lie in (0, 1]");
    const int n = cov.effective_order();
    SpectralPoly sp;
    sp.r = r;
    sp.order = n;
    sp.laurent.assign(2 * static_cast<std::size_t>(n) + 1, cplx(0.0));
    sp.lift.assign(2 * static_cast<std::size_t>(n) + 1, cplx(0.0));
    double rk = 1.0;
    sp.laurent[static_cast<std::size_t>(n)] = 1.0;
    for (int k = 1; k <= n; ++k) {
        rk *= r;
        const cplx g = cov.gamma(k);
        sp.laurent[static_cast<std::size_t>(n + k)] = std::conj(g) * rk;
        sp.laurent[static_cast<std::size_t>(n - k)] = g * rk;
    }
    // lift[j] = laurent coefficient of z^{j-n}; the lift is self-inversive:
    // lift[2n - j] == conj(lift[j]) holds exactly for the stored doubles.
    sp.lift = sp.laurent;
    return sp;
}

double min_spectral_density(const Covariance& cov, double r, int grid) {
    if (grid < 8) throw DomainError("grid must have at least 8 nodes");
    const SpectralPoly sp = spectral_poly(cov, r);
    double lo = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i)
        lo = std::min(lo, sp.eval_circle(detail::kTwoPi * i / grid));
    return lo;
}

double MAFilter::roundtrip_residual(const Covariance& cov) const {
    const int q = order();
    const int n = std::max(q, cov.effective_order());
    double worst = 0.0;
    for (int k = 0; k <= n; ++k) {
        cplx acc = 0.0;
        for (int j = 0; j + k <= q; ++j)
            acc += taps[static_cast<std::size_t>(j + k)]
                 * std::conj(taps[static_cast<std::size_t>(j)]);
        worst = std::max(worst, std::abs(acc - cov.gamma(k)));
    }
    return worst;
}

namespace {

// A root of multiplicity m is a simple root of the (m-1)-th derivative;
// Newton from the cluster centroid recovers it to full precision.
cplx refine_multiple_root(std::span<const cplx> coeffs, cplx z0, int m) {
    std::vector<cplx> d(coeffs.begin(), coeffs.end());
    for (int t = 0; t < m - 1; ++t) d = detail::differentiate(d);
    cplx z = z0;
    for (int iter = 0; iter < 60; ++iter) {
        const auto [p, dp] = detail::eval_poly_pair(d, z);
        if (dp == cplx(0.0)) break;
        const cplx step = cdiv(p, dp);
        z -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) break;
    }
    return z;
}

} // namespace

MAFilter spectral_factorize(const Covariance& cov) {
    const int n = cov.effective_order();
    if (n == 0) return MAFilter{{cplx(1.0)}};

    const SpectralPoly sp = spectral_poly(cov, 1.0);
    const RootSet rs = poly_roots(sp.lift);
    const std::size_t total = rs.roots.size();

    // A circle zero of multiplicity m scatters like eps^(1/m) under rounding,
    // so the capture band must be wide; the refinement below restores the
    // lost digits and the roundtrip check validates the result.
    const double circle_band = 0.05;
    const double angle_link = 0.1;

    std::vector<std::size_t> circle_idx, off_idx;
    for (std::size_t i = 0; i < total; ++i) {
        if (std::abs(std::abs(rs.roots[i]) - 1.0) < circle_band)
            circle_idx.push_back(i);
        else
            off_idx.push_back(i);
    }

    std::sort(circle_idx.begin(), circle_idx.end(),
              [&](std::size_t x, std::size_t y) {
                  return std::arg(rs.roots[x]) < std::arg(rs.roots[y]);
              });

    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t i = 0; i < circle_idx.size(); ++i) {
        const double ang = std::arg(rs.roots[circle_idx[i]]);
        if (!clusters.empty()) {
            const double prev = std::arg(rs.roots[clusters.back().back()]);
            if (ang - prev <= angle_link) {
                clusters.back().push_back(circle_idx[i]);
                continue;
            }
        }
        clusters.push_back({circle_idx[i]});
    }
    if (clusters.size() > 1) {
        // The seam at arg == +-pi may split one cluster in two.
        const double first = std::arg(rs.roots[clusters.front().front()]);
        const double last = std::arg(rs.roots[clusters.back().back()]);
        if (first + detail::kTwoPi - last <= angle_link) {
            for (std::size_t idx : clusters.front())
                clusters.back().push_back(idx);
            clusters.erase(clusters.begin());
        }
    }

    struct CircleRoot {
        double angle;
        int copies;
        cplx value;
    };
    std::vector<CircleRoot> circle_roots;
    for (const auto& cl : clusters) {
        if (cl.size() % 2 != 0)
            throw FactorizationError(
                "odd circle zero cluster: spectral density not factorizable");
        cplx centroid = 0.0;
        for (std::size_t idx : cl) centroid += rs.roots[idx];
        centroid /= static_cast<double>(cl.size());
        cplx refined =
            refine_multiple_root(sp.lift, centroid, static_cast<int>(cl.size()));
        refined /= std::abs(refined);
        circle_roots.push_back(
            {std::arg(refined), static_cast<int>(cl.size()) / 2, refined});
    }
    std::sort(circle_roots.begin(), circle_roots.end(),
              [](const CircleRoot& x, const CircleRoot& y) {
                  return x.angle < y.angle;
              });

    std::sort(off_idx.begin(), off_idx.end(), [&](std::size_t x, std::size_t y) {
        const cplx zx = rs.roots[x], zy = rs.roots[y];
        const double ax = std::arg(zx), ay = std::arg(zy);
        if (ax != ay) return ax < ay;
        return std::abs(zx) < std::abs(zy);
    });
    std::vector<bool> used(off_idx.size(), false);
    std::vector<cplx> inside_members;
    for (std::size_t i = 0; i < off_idx.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        const cplx w = rs.roots[off_idx[i]];
        const cplx target = cdiv(cplx(1.0), std::conj(w));
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = off_idx.size();
        for (std::size_t j = 0; j < off_idx.size(); ++j) {
            if (used[j]) continue;
            const double dist = std::abs(rs.roots[off_idx[j]] - target);
            if (dist < best) {
                best = dist;
                best_j = j;
            }
        }
        if (best_j == off_idx.size())
            throw FactorizationError("unpaired off-circle zero");
        if (best > 1e-8 * (1.0 + std::abs(target)))
            throw FactorizationError(
                "off-circle zeros do not pair under circle inversion");
        used[best_j] = true;
        const cplx other = rs.roots[off_idx[best_j]];
        inside_members.push_back(std::abs(w) <= std::abs(other) ? w : other);
    }
    std::sort(inside_members.begin(), inside_members.end(),
              [](const cplx& x, const cplx& y) {
                  const double ax = std::arg(x), ay = std::arg(y);
                  if (ax != ay) return ax < ay;
                  return std::abs(x) < std::abs(y);
              });

    std::vector<cplx> selected;
    for (const CircleRoot& cr : circle_roots)
        for (int c = 0; c < cr.copies; ++c) selected.push_back(cr.value);
    for (const cplx& w : inside_members) selected.push_back(w);
    if (static_cast<int>(selected.size()) != n)
        throw FactorizationError("factor degree mismatch");

    std::vector<cplx> mono{cplx(1.0)};
    for (const cplx& w : selected) {
        std::vector<cplx> next(mono.size() + 1, cplx(0.0));
        for (std::size_t j = 0; j < mono.size(); ++j) {
            next[j] += mono[j] * (-w);
            next[j + 1] += mono[j];
        }
        mono = std::move(next);
    }
    double norm2 = 0.0;
    for (const cplx& c : mono) norm2 += std::norm(c);
    const double scale = std::sqrt(norm2);
    MAFilter filter;
    filter.taps.resize(mono.size());
    // |P|^2 with these coefficients expands to the conjugated covariance;
    // conjugating the taps restores gamma itself. The conjugated roots stay
    // inside the closed disk.
    for (std::size_t j = 0; j < mono.size(); ++j)
        filter.taps[j] = std::conj(mono[j] / scale);

    if (filter.roundtrip_residual(cov) > 1e-10)
        throw FactorizationError(
            "factorization roundtrip residual exceeds tolerance");
    return filter;
}

} // namespace gafzeros
