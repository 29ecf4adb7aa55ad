#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gafzeros/rootfind.hpp>
#include <gafzeros/rng.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

using namespace gafzeros;

namespace {

// smallest |computed - expected| over the root list
double closest(const RootSet& rs, cplx target) {
    double best = 1e300;
    for (const auto& z : rs.roots) best = std::min(best, std::abs(z - target));
    return best;
}

} // namespace

TEST_CASE("quadratic with known roots") {
    const std::vector<cplx> coeffs = {cplx(-1.0), cplx(0.0), cplx(1.0)}; // z^2 - 1
    auto rs = poly_roots(coeffs);
    REQUIRE(rs.roots.size() == 2);
    CHECK(closest(rs, cplx(1.0)) < 1e-14);
    CHECK(closest(rs, cplx(-1.0)) < 1e-14);
    CHECK(rs.multiplicity[0] == 1);
    CHECK(rs.multiplicity[1] == 1);
    CHECK(rs.inside.empty());
    CHECK(rs.residual < 1e-14);
}

TEST_CASE("roots sort by argument then modulus") {
    // z^4 - 1: arguments 0, pi/2, pi, -pi/2 sort as -pi/2, 0, pi/2, pi
    auto rs = poly_roots(std::vector<cplx>{cplx(-1.0), 0.0, 0.0, 0.0, cplx(1.0)});
    REQUIRE(rs.roots.size() == 4);
    CHECK(std::abs(rs.roots[0] - cplx(0.0, -1.0)) < 1e-14);
    CHECK(std::abs(rs.roots[1] - cplx(1.0)) < 1e-14);
    CHECK(std::abs(rs.roots[2] - cplx(0.0, 1.0)) < 1e-14);
    CHECK(std::abs(rs.roots[3] - cplx(-1.0)) < 1e-14);
}

TEST_CASE("degenerate and invalid inputs") {
    CHECK_THROWS_AS(poly_roots(std::vector<cplx>{}), DegenerateInput);
    CHECK_THROWS_AS(poly_roots(std::vector<cplx>{cplx(3.0)}), DegenerateInput);
    CHECK_THROWS_AS(poly_roots(std::vector<cplx>{cplx(0.0), cplx(0.0)}),
                    DegenerateInput);
    const double nan = std::nan("");
    CHECK_THROWS_AS(poly_roots(std::vector<cplx>{cplx(nan), cplx(1.0)}), DomainError);
}

TEST_CASE("trailing zero coefficients give exact roots at the origin") {
    // z^2 (z^2 - 1)
    auto rs = poly_roots(std::vector<cplx>{0.0, 0.0, cplx(-1.0), 0.0, cplx(1.0)});
    int zero_mult = 0;
    for (std::size_t i = 0; i < rs.roots.size(); ++i)
        if (rs.roots[i] == cplx(0.0)) zero_mult = rs.multiplicity[i];
    CHECK(zero_mult == 2);
    CHECK(closest(rs, cplx(1.0)) < 1e-14);
    // the origin root lands in the inside index list
    bool origin_inside = false;
    for (int idx : rs.inside)
        if (rs.roots[idx] == cplx(0.0)) origin_inside = true;
    CHECK(origin_inside);
}

TEST_CASE("quadruple root is clustered") {
    // (z + 1)^4
    auto rs = poly_roots(std::vector<cplx>{1.0, 4.0, 6.0, 4.0, 1.0});
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
        CHECK(std::abs(rs.roots[i] + 1.0) < 1e-3);
        CHECK(rs.multiplicity[i] == 4);
    }
}

TEST_CASE("random degree-8 polynomials have tiny residuals") {
    CounterRng rng(12345);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<cplx> coeffs(9);
        for (auto& c : coeffs)
            c = cplx(2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0);
        if (std::abs(coeffs.back()) < 0.1) coeffs.back() += cplx(0.5);
        auto rs = poly_roots(coeffs);
        CHECK(rs.roots.size() == 8);
        CHECK(rs.residual < 1e-10);
    }
}

TEST_CASE("steeply graded coefficients") {
    // roots at 1, 10, 100: coefficient range spans five orders of magnitude
    std::vector<cplx> coeffs = {cplx(-1000.0), cplx(1110.0), cplx(-111.0), cplx(1.0)};
    auto rs = poly_roots(coeffs);
    CHECK(closest(rs, cplx(1.0)) < 1e-10);
    CHECK(closest(rs, cplx(10.0)) < 1e-9);
    CHECK(closest(rs, cplx(100.0)) < 1e-8);
}

TEST_CASE("wilkinson stress at degree 12") {
    std::vector<cplx> coeffs = {cplx(1.0)};
    for (int k = 1; k <= 12; ++k) {
        coeffs.insert(coeffs.begin(), cplx(0.0));
        for (std::size_t j = 0; j + 1 < coeffs.size(); ++j)
            coeffs[j] -= static_cast<double>(k) * coeffs[j + 1];
    }
    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
    auto rs = poly_roots(coeffs);
    REQUIRE(rs.roots.size() == 12);
    CHECK(rs.residual < 1e-8 * scale);
    for (int k = 1; k <= 12; ++k)
        CHECK(closest(rs, cplx(static_cast<double>(k))) < 1e-5);
}

TEST_CASE("high degree with a far root stays finite") {
    // a tiny leading coefficient puts one root near -1e6, where |z|^300
    // overflows a double; every returned root must still be finite
    std::vector<cplx> coeffs(301, cplx(1.0));
    coeffs[300] = cplx(1e-6);
    auto rs = poly_roots(coeffs);
    REQUIRE(rs.roots.size() == 300);
    int far = 0, near_circle = 0;
    for (const auto& z : rs.roots) {
        REQUIRE(std::isfinite(z.real()));
        REQUIRE(std::isfinite(z.imag()));
        const double az = std::abs(z);
        if (std::abs(z + 1e6) < 1e3) ++far;
        if (az < 1.1) ++near_circle;
    }
    CHECK(far == 1);
    CHECK(near_circle == 299);
}

TEST_CASE("lifted density roots for the order-1 binomial match the quadratic") {
    // q(r, z) proportional to r + 2 z + r z^2
    for (double r : {0.3, 0.9, 0.99}) {
        auto rs = theta_roots(Covariance::binomial(1), r);
        REQUIRE(rs.roots.size() == 2);
        REQUIRE(rs.inside.size() == 1);
        const double s = std::sqrt(1.0 - r * r);
        CHECK(std::abs(rs.roots[rs.inside[0]] - cplx((-1.0 + s) / r)) < 1e-12);
        CHECK(closest(rs, cplx((-1.0 - s) / r)) < 1e-12);
    }
}

TEST_CASE("lifted density roots come in inverse-conjugate pairs") {
    const std::vector<Covariance> covs = {
        Covariance::two_dependent(0.2, 0.05),
        Covariance::two_dependent(2.0 / 3.0, 1.0 / 6.0),
        Covariance::two_dependent(-0.3, 0.05),
        Covariance::from_gamma({cplx(1.0), cplx(0.3, 0.2), cplx(0.1, -0.1)}),
    };
    for (const auto& cov : covs) {
        for (double r : {0.3, 0.9}) {
            auto rs = theta_roots(cov, r);
            CHECK(static_cast<int>(rs.inside.size()) == cov.effective_order());
            CHECK(pairing_residual(rs) < 1e-8);
            for (const auto& z : rs.roots)
                CHECK(std::abs(std::abs(z) - 1.0) > 1e-9);
        }
    }
}

TEST_CASE("iid covariance has no lifted roots") {
    auto rs = theta_roots(Covariance::from_gamma({cplx(1.0)}), 0.5);
    CHECK(rs.roots.empty());
    CHECK(rs.inside.empty());
}

TEST_CASE("lifted root radius validation") {
    CHECK_THROWS_AS(theta_roots(Covariance::binomial(1), 0.0), DomainError);
    CHECK_THROWS_AS(theta_roots(Covariance::binomial(1), 1.5), DomainError);
    CHECK_THROWS_AS(theta_roots(Covariance::binomial(1), -0.5), DomainError);
}

TEST_CASE("branch tracking across a fine radius grid") {
    // eighth-decade steps in 1-r: root motion scales like (1-r)^(1/4),
    // so coarser steps outrun the branch separation near the start
    std::vector<double> grid;
    for (int k = 0; k <= 24; ++k) grid.push_back(1.0 - 0.1 * std::pow(10.0, -k / 8.0));
    auto tb = track_branches(Covariance::binomial(2), grid);
    REQUIRE(tb.branches.size() == 4);
    REQUIRE(tb.labels.size() == 4);
    int inside = 0;
    for (std::size_t j = 0; j < tb.branches.size(); ++j) {
        REQUIRE(tb.branches[j].size() == grid.size());
        // all four branches collapse toward -1
        CHECK(std::abs(tb.branches[j].back() + 1.0) < 0.35);
        if (tb.labels[j].inside_at_end) ++inside;
        CHECK(tb.labels[j].final_abs
              == doctest::Approx(std::abs(tb.branches[j].back())).epsilon(1e-12));
    }
    CHECK(inside == 2);
    // conjugation symmetry of the root multiset at every grid point
    for (std::size_t m = 0; m < grid.size(); ++m) {
        for (std::size_t j = 0; j < tb.branches.size(); ++j) {
            double best = 1e300;
            for (std::size_t k = 0; k < tb.branches.size(); ++k)
                best = std::min(best, std::abs(std::conj(tb.branches[j][m])
                                               - tb.branches[k][m]));
            CHECK(best < 1e-9);
        }
    }
}

TEST_CASE("branches are nearly stationary away from the degenerate point") {
    std::vector<double> grid = {0.99, 0.995, 0.999};
    auto tb = track_branches(Covariance::two_dependent(0.2, 0.05), grid);
    for (const auto& br : tb.branches)
        for (std::size_t i = 1; i < br.size(); ++i)
            CHECK(std::abs(br[i] - br[i - 1]) < 0.05);
}

TEST_CASE("coarse grids near a degenerate point are rejected") {
    std::vector<double> grid = {0.3, 0.99};
    CHECK_THROWS_AS(track_branches(Covariance::binomial(2), grid),
                    AmbiguousMatching);
}

TEST_CASE("branch tracking validates its grid") {
    std::vector<double> empty;
    CHECK_THROWS_AS(track_branches(Covariance::binomial(1), empty), DegenerateInput);
    std::vector<double> unsorted = {0.9, 0.5};
    CHECK_THROWS_AS(track_branches(Covariance::binomial(1), unsorted), DomainError);
    std::vector<double> out = {0.5, 1.2};
    CHECK_THROWS_AS(track_branches(Covariance::binomial(1), out), DomainError);
}
