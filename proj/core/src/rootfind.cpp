#include "gafzeros/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "gafzeros/covariance.hpp"
#include "gafzeros/errors.hpp"
#include "poly_util.hpp"

namespace gafzeros {

namespace {

using detail::cdiv;
using detail::cplx;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSweeps = 500;

struct TwoFloat {
    double val;
    double err;
};

TwoFloat two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

TwoFloat two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

// Compensated complex Horner: returns the working-precision value plus a
// first-order correction, good to roughly eps * |p(z)| instead of
// eps * sum |a_k||z|^k. Used to polish nearly multiple roots.
cplx compensated_eval(std::span<const cplx> c, cplx z) {
    const int d = static_cast<int>(c.size()) - 1;
    const double zr = z.real(), zi = z.imag();
    double pr = c[d].real(), pi = c[d].imag();
    double er = 0.0, ei = 0.0;
    for (int k = d - 1; k >= 0; --k) {
        const TwoFloat m1 = two_prod(pr, zr);
        const TwoFloat m2 = two_prod(pi, zi);
        const TwoFloat m3 = two_prod(pr, zi);
        const TwoFloat m4 = two_prod(pi, zr);
        const TwoFloat s1 = two_sum(m1.val, -m2.val);
        const TwoFloat s2 = two_sum(m3.val, m4.val);
        const TwoFloat a1 = two_sum(s1.val, c[k].real());
        const TwoFloat a2 = two_sum(s2.val, c[k].imag());
        const double new_er =
            er * zr - ei * zi + (m1.err - m2.err + s1.err + a1.err);
        const double new_ei =
            er * zi + ei * zr + (m3.err + m4.err + s2.err + a2.err);
        pr = a1.val;
        pi = a2.val;
        er = new_er;
        ei = new_ei;
    }
    return {pr + er, pi + ei};
}

struct Workspace {
    std::vector<cplx> coeff;   // trimmed, scaled so max |coeff| == 1
    std::vector<double> cabs;  // |coeff|
    int zero_roots = 0;        // multiplicity of the root at the origin
};

Workspace prepare(std::span<const cplx> coeffs) {
    if (coeffs.empty()) throw DegenerateInput("zero polynomial");
    for (const cplx& c : coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw DomainError("polynomial coefficients must be finite");
    std::size_t hi = coeffs.size();
    while (hi > 0 && coeffs[hi - 1] == cplx(0.0)) --hi;
    if (hi == 0) throw DegenerateInput("zero polynomial");
    std::size_t lo = 0;
    while (lo < hi && coeffs[lo] == cplx(0.0)) ++lo;
    if (hi - lo <= 1 && lo == 0)
        throw DegenerateInput("constant polynomial has no roots");

    Workspace ws;
    ws.zero_roots = static_cast<int>(lo);
    ws.coeff.assign(coeffs.begin() + static_cast<long>(lo),
                    coeffs.begin() + static_cast<long>(hi));
    double top = 0.0;
    for (const cplx& c : ws.coeff) top = std::max(top, std::abs(c));
    for (cplx& c : ws.coeff) c /= top;
    ws.cabs.resize(ws.coeff.size());
    for (std::size_t k = 0; k < ws.coeff.size(); ++k)
        ws.cabs[k] = std::abs(ws.coeff[k]);
    return ws;
}

// Aberth-Ehrlich with Gauss-Seidel sweeps. Roots lock individually once the
// residual falls below the Horner rounding envelope, which is what terminates
// the linear-rate crawl at multiple roots.
std::vector<cplx> aberth(const Workspace& ws) {
    const int d = static_cast<int>(ws.coeff.size()) - 1;
    const std::vector<cplx>& c = ws.coeff;
    const std::vector<double>& cabs = ws.cabs;

    std::vector<double> xr(d), xi(d);
    double radius = std::pow(std::abs(c[0]) / std::abs(c[d]), 1.0 / d);
    if (!std::isfinite(radius) || radius == 0.0) radius = 1.0;
    radius = std::clamp(radius, 1e-3, 1e3);
    constexpr double golden = 0.61803398874989485;
    for (int i = 0; i < d; ++i) {
        double frac = (i + 1) * golden;
        frac -= std::floor(frac);
        const double ang = detail::kTwoPi * frac + 0.35;
        xr[i] = radius * std::cos(ang);
        xi[i] = radius * std::sin(ang);
    }

    std::vector<char> locked(d, 0);
    const double lock_scale = 8.0 * d * kEps;
    // Beyond this magnitude the squared Horner registers overflow, so the
    // iterate is evaluated through the reversed polynomial at 1/z instead.
    const double safe_az = std::exp(300.0 / d);

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool all_small = true;
        int active = 0;
        for (int i = 0; i < d; ++i) {
            if (locked[i]) continue;
            ++active;
            const double zr = xr[i], zi = xi[i];
            const double az = std::sqrt(zr * zr + zi * zi);
            double nr, ni; // Newton step p/p'
            if (az <= safe_az) {
                // Horner for p, p' and the rounding envelope in one pass.
                double pr = c[d].real(), pi = c[d].imag();
                double dr = 0.0, di = 0.0;
                double env = cabs[d];
                for (int k = d - 1; k >= 0; --k) {
                    const double tr = dr * zr - di * zi + pr;
                    const double ti = dr * zi + di * zr + pi;
                    dr = tr;
                    di = ti;
                    const double ur = pr * zr - pi * zi + c[k].real();
                    const double ui = pr * zi + pi * zr + c[k].imag();
                    pr = ur;
                    pi = ui;
                    env = env * az + cabs[k];
                }
                const double pnorm = pr * pr + pi * pi;
                const double lock_tol = lock_scale * env;
                if (pnorm <= lock_tol * lock_tol) {
                    locked[i] = 1;
                    continue;
                }
                const double dnorm = dr * dr + di * di;
                if (dnorm == 0.0) {
                    nr = 1e-3 * (1.0 + az);
                    ni = 0.0;
                } else {
                    nr = (pr * dr + pi * di) / dnorm;
                    ni = (pi * dr - pr * di) / dnorm;
                }
            } else {
                // p(z) = z^d q(1/z): the z^d factor cancels in both the lock
                // test and the Newton correction z q / (d q - u q').
                const cplx z(zr, zi);
                const cplx u = cdiv(cplx(1.0), z);
                const double au = std::abs(u);
                cplx q = c[0], dq = 0.0;
                double envq = cabs[0];
                for (int k = 1; k <= d; ++k) {
                    dq = dq * u + q;
                    q = q * u + c[k];
                    envq = envq * au + cabs[k];
                }
                const double lock_tol = lock_scale * envq;
                if (std::norm(q) <= lock_tol * lock_tol) {
                    locked[i] = 1;
                    continue;
                }
                const cplx denom = static_cast<double>(d) * q - u * dq;
                if (denom == cplx(0.0)) {
                    nr = 1e-3 * (1.0 + az);
                    ni = 0.0;
                } else {
                    const cplx n = z * cdiv(q, denom);
                    nr = n.real();
                    ni = n.imag();
                }
            }
            double sr = 0.0, si = 0.0; // sum of 1/(x_i - x_j)
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                const double er = zr - xr[j];
                const double ei2 = zi - xi[j];
                const double en = er * er + ei2 * ei2;
                if (en == 0.0) continue;
                sr += er / en;
                si -= ei2 / en;
            }
            const double denr = 1.0 - (nr * sr - ni * si);
            const double deni = -(nr * si + ni * sr);
            const double dn = denr * denr + deni * deni;
            double wr, wi;
            if (dn < 1e-30) {
                wr = nr;
                wi = ni;
            } else {
                wr = (nr * denr + ni * deni) / dn;
                wi = (ni * denr - nr * deni) / dn;
            }
            // A near-critical point can fling the iterate far out, where
            // recovery is slow; keep each step comparable to the magnitude.
            double wn = std::sqrt(wr * wr + wi * wi);
            const double cap = 1.0 + az;
            if (!(wn <= cap)) {
                const double s = cap / wn;
                wr *= s;
                wi *= s;
                wn = cap;
            }
            xr[i] = zr - wr;
            xi[i] = zi - wi;
            if (!std::isfinite(xr[i]) || !std::isfinite(xi[i])) {
                double frac = (i + 1) * golden + 0.25 * (sweep + 1);
                frac -= std::floor(frac);
                const double ang = detail::kTwoPi * frac + 0.35;
                xr[i] = radius * std::cos(ang);
                xi[i] = radius * std::sin(ang);
                all_small = false;
                continue;
            }
            if (wn > 1e-12 * (1.0 + std::abs(xr[i]) + std::abs(xi[i])))
                all_small = false;
        }
        if (active == 0 || all_small) {
            std::vector<cplx> out(d);
            for (int i = 0; i < d; ++i) out[i] = {xr[i], xi[i]};
            return out;
        }
    }
    throw ConvergenceError("root iteration did not converge");
}

void polish(const Workspace& ws, std::vector<cplx>& roots, bool compensated) {
    const int d = static_cast<int>(ws.coeff.size()) - 1;
    const double safe_az = std::exp(300.0 / d);
    for (cplx& z : roots) {
        for (int iter = 0; iter < 3; ++iter) {
            if (std::abs(z) > safe_az) {
                // Same reversed-polynomial Newton step as the solver uses.
                const cplx u = cdiv(cplx(1.0), z);
                const double au = std::abs(u);
                cplx q = ws.coeff[0], dq = 0.0;
                double envq = ws.cabs[0];
                for (int k = 1; k <= d; ++k) {
                    dq = dq * u + q;
                    q = q * u + ws.coeff[static_cast<std::size_t>(k)];
                    envq = envq * au + ws.cabs[static_cast<std::size_t>(k)];
                }
                if (std::abs(q) <= 2.0 * kEps * envq) break;
                const cplx denom = static_cast<double>(d) * q - u * dq;
                if (denom == cplx(0.0)) break;
                const cplx step = z * cdiv(q, denom);
                z -= step;
                if (std::abs(step) <= kEps * (1.0 + std::abs(z))) break;
                continue;
            }
            const auto pair = detail::eval_poly_pair(ws.coeff, z);
            cplx p = pair.p;
            if (compensated) p = compensated_eval(ws.coeff, z);
            double env = ws.cabs[static_cast<std::size_t>(d)];
            const double az = std::abs(z);
            for (int k = d - 1; k >= 0; --k) env = env * az + ws.cabs[k];
            if (std::abs(p) <= 2.0 * kEps * env && !compensated) break;
            if (pair.dp == cplx(0.0)) break;
            const cplx step = cdiv(p, pair.dp);
            z -= step;
            if (std::abs(step) <= kEps * (1.0 + std::abs(z))) break;
        }
    }
}

double min_separation(const std::vector<cplx>& roots) {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            lo = std::min(lo, std::abs(roots[i] - roots[j]));
    return lo;
}

} // namespace

RootSet poly_roots(std::span<const cplx> coeffs) {
    const Workspace ws = prepare(coeffs);
    std::vector<cplx> roots;
    if (ws.coeff.size() > 1) {
        roots = aberth(ws);
        polish(ws, roots, false);
        if (roots.size() > 1 && min_separation(roots) < 1e-5)
            polish(ws, roots, true);
    }
    for (int k = 0; k < ws.zero_roots; ++k) roots.push_back(0.0);

    RootSet rs;
    const std::size_t m = roots.size();
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const double aa = std::arg(roots[a]), ab = std::arg(roots[b]);
        if (aa != ab) return aa < ab;
        return std::abs(roots[a]) < std::abs(roots[b]);
    });
    rs.roots.resize(m);
    for (std::size_t i = 0; i < m; ++i) rs.roots[i] = roots[idx[i]];

    // Single-link clustering; radius widens with degree because a root of
    // multiplicity q scatters like eps^(1/q).
    const int deg = static_cast<int>(m);
    const double link =
        deg <= 16 ? std::max(1e-6, std::pow(10.0, -13.0 / deg)) : 1e-6;
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (std::abs(rs.roots[i] - rs.roots[j]) <= link)
                parent[find(i)] = find(j);
    std::vector<int> count(m, 0);
    for (std::size_t i = 0; i < m; ++i) ++count[find(i)];
    rs.multiplicity.resize(m);
    for (std::size_t i = 0; i < m; ++i) rs.multiplicity[i] = count[find(i)];

    rs.residual = 0.0;
    const int d0 = static_cast<int>(coeffs.size()) - 1;
    const double safe0 = std::exp(700.0 / std::max(1, d0));
    for (std::size_t i = 0; i < m; ++i) {
        const double az = std::abs(rs.roots[i]);
        // |p| at a root far outside the unit circle overflows; saturate
        // instead of propagating infinities into the report.
        const double pv =
            az <= safe0 ? std::abs(detail::eval_poly(coeffs, rs.roots[i]))
                        : std::numeric_limits<double>::max();
        rs.residual = std::max(rs.residual, pv);
        if (az < 1.0) rs.inside.push_back(static_cast<int>(i));
    }
    return rs;
}

RootSet theta_roots(const Covariance& cov, double r) {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("radius must lie in (0, 1]");
    const int n = cov.effective_order();
    if (n == 0) return RootSet{};
    const SpectralPoly sp = spectral_poly(cov, r);
    RootSet rs = poly_roots(sp.lift);
    if (r < 1.0 && static_cast<int>(rs.inside.size()) != n)
        throw ConvergenceError(
            "inside root count does not match the dependence order");
    return rs;
}

double pairing_residual(const RootSet& rs) {
    const std::size_t m = rs.roots.size();
    if (m == 0) return 0.0;
    std::vector<bool> used(m, false);
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (used[i]) continue;
        used[i] = true;
        const cplx w = rs.roots[i];
        if (w == cplx(0.0)) return std::numeric_limits<double>::infinity();
        const cplx target = cdiv(cplx(1.0), std::conj(w));
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = m;
        for (std::size_t j = 0; j < m; ++j) {
            if (used[j]) continue;
            const double dist = std::abs(rs.roots[j] - target);
            if (dist < best) {
                best = dist;
                best_j = j;
            }
        }
        if (best_j == m) return std::numeric_limits<double>::infinity();
        used[best_j] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

BranchTrack track_branches(const Covariance& cov,
                           std::span<const double> r_grid) {
    if (r_grid.empty()) throw DegenerateInput("radius grid is empty");
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] > 0.0 && r_grid[i] < 1.0))
            throw DomainError("radius grid values must lie in (0, 1)");
        if (i > 0 && !(r_grid[i] > r_grid[i - 1]))
            throw DomainError("radius grid must be strictly increasing");
    }

    BranchTrack bt;
    bt.r_grid.assign(r_grid.begin(), r_grid.end());
    RootSet rs = theta_roots(cov, r_grid[0]);
    const std::size_t d = rs.roots.size();
    bt.branches.resize(d);
    if (d == 0) return bt;
    for (std::size_t j = 0; j < d; ++j) bt.branches[j].push_back(rs.roots[j]);
    std::vector<cplx> prev = rs.roots;

    for (std::size_t m = 1; m < r_grid.size(); ++m) {
        rs = theta_roots(cov, r_grid[m]);
        if (rs.roots.size() != d)
            throw ConvergenceError("root count changed along the radius grid");
        std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
        pairs.reserve(d * d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k)
                pairs.emplace_back(std::abs(prev[i] - rs.roots[k]), i, k);
        std::sort(pairs.begin(), pairs.end());
        std::vector<bool> taken_prev(d, false), taken_new(d, false);
        std::vector<std::size_t> match(d, d);
        std::size_t assigned = 0;
        double max_move = 0.0;
        for (const auto& [dist, i, k] : pairs) {
            if (taken_prev[i] || taken_new[k]) continue;
            taken_prev[i] = true;
            taken_new[k] = true;
            match[i] = k;
            max_move = std::max(max_move, dist);
            if (++assigned == d) break;
        }
        double min_sep = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = i + 1; k < d; ++k)
                min_sep = std::min(min_sep, std::abs(rs.roots[i] - rs.roots[k]));
        if (d > 1 && max_move >= 0.5 * min_sep)
            throw AmbiguousMatching(
                "root motion exceeds half the minimal separation; refine the "
                "radius grid");
        for (std::size_t i = 0; i < d; ++i) {
            prev[i] = rs.roots[match[i]];
            bt.branches[i].push_back(prev[i]);
        }
    }

    bt.labels.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
        const cplx last = bt.branches[j].back();
        bt.labels[j] = {std::abs(last) < 1.0, std::abs(last)};
    }
    return bt;
}

} // namespace gafzeros
