#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gafzeros/covariance.hpp>

#include <cmath>
#include <complex>
#include <vector>

using namespace gafzeros;

namespace {

Covariance complex_example() {
    return Covariance::from_gamma({cplx(1.0), cplx(0.3, 0.2), cplx(0.1, -0.1)});
}

} // namespace

TEST_CASE("two-parameter family membership") {
    CHECK(in_region(0.0, 0.0));
    CHECK(in_region(0.2, 0.05));
    CHECK(in_region(0.4, 0.1));
    CHECK(in_region(-0.3, 0.05));
    CHECK(in_region(2.0 / 3.0, 1.0 / 6.0));
    CHECK(in_region(0.3, -0.2));
    CHECK(in_region(0.0, 0.5));
    CHECK_FALSE(in_region(0.9, 0.9));
    CHECK_FALSE(in_region(0.7, 0.5));
    CHECK_FALSE(in_region(1.0, 0.0));
    CHECK_FALSE(in_region(0.0, -0.6));
}

TEST_CASE("region classification") {
    CHECK(classify_region(0.0, 0.0) == RegionLabel::Interior);
    CHECK(classify_region(0.2, 0.05) == RegionLabel::Interior);
    CHECK(classify_region(2.0 / 3.0, 1.0 / 6.0) == RegionLabel::CornerDegenerate);
    CHECK(classify_region(-2.0 / 3.0, 1.0 / 6.0) == RegionLabel::CornerDegenerate);
    const double a_ell = 2.0 * std::sqrt(0.3 * (1.0 - 2.0 * 0.3));
    CHECK(classify_region(a_ell, 0.3) == RegionLabel::BoundaryEllipse);
    CHECK(classify_region(0.0, 0.5) == RegionLabel::BoundaryEllipse);
    CHECK(classify_region(0.3, -0.2) == RegionLabel::BoundaryLine);
    CHECK(classify_region(-0.3, -0.2) == RegionLabel::BoundaryLine);
    CHECK(classify_region(0.9, 0.9) == RegionLabel::Outside);
    // decimal corner coordinates need the loose tolerance
    CHECK(classify_region(0.666666666666667, 0.166666666666667, 1e-9)
          == RegionLabel::CornerDegenerate);
    CHECK(region_label_name(RegionLabel::BoundaryLine)
          == std::string("boundary-line"));
}

TEST_CASE("membership matches construction and spectral positivity") {
    // classify != Outside iff two_dependent accepts iff the density grid is
    // nonnegative; generic grid staying ~1e-3 away from the boundary.
    for (int i = 0; i <= 40; ++i) {
        for (int j = 0; j <= 24; ++j) {
            const double a = -1.0 + 0.05 * i;
            const double b = -0.6 + 0.05 * j;
            const bool member = in_region(a, b);
            bool constructed = true;
            double grid_min = 0.0;
            try {
                auto cov = Covariance::two_dependent(a, b);
                grid_min = min_spectral_density(cov, 1.0);
            } catch (const NotPositiveDefinite&) {
                constructed = false;
            }
            CAPTURE(a);
            CAPTURE(b);
            CHECK(member == constructed);
            if (constructed) CHECK(grid_min >= -1e-10);
        }
    }
}

TEST_CASE("binomial covariances") {
    auto b1 = Covariance::binomial(1);
    CHECK(b1.order() == 1);
    CHECK(b1.gamma(1) == cplx(0.5));
    auto b2 = Covariance::binomial(2);
    CHECK(b2.gamma(0) == cplx(1.0));
    CHECK(b2.gamma(1) == cplx(2.0 / 3.0));
    CHECK(b2.gamma(2) == cplx(1.0 / 6.0));
    CHECK(b2.gamma(-2) == cplx(1.0 / 6.0));
    // gamma(n) = 1 / C(2n, n)
    const double c36 = 1.0 / 20.0;
    CHECK(Covariance::binomial(3).gamma(3).real() == doctest::Approx(c36).epsilon(1e-15));
    CHECK(Covariance::binomial(6).gamma(6).real()
          == doctest::Approx(1.0 / 924.0).epsilon(1e-15));
    CHECK_THROWS_AS(Covariance::binomial(0), DomainError);
    CHECK_THROWS_AS(Covariance::binomial(26), DomainError);
    // order-2 binomial sits exactly on the degenerate corner
    auto ab = b2.as_two_dependent();
    REQUIRE(ab.has_value());
    CHECK(classify_region(ab->first, ab->second) == RegionLabel::CornerDegenerate);
}

TEST_CASE("construction validation") {
    CHECK_THROWS_AS(Covariance::two_dependent(0.9, 0.9), NotPositiveDefinite);
    CHECK_THROWS_AS(Covariance::two_dependent(1.0, 0.0), NotPositiveDefinite);
    CHECK_THROWS_AS(Covariance::from_gamma({cplx(0.5)}), DomainError);
    CHECK_THROWS_AS(Covariance::from_gamma({}), DomainError);
    // |gamma(1)| = 0.8 > 1/2 makes the density 1 + 1.6 cos(theta) negative
    CHECK_THROWS_AS(Covariance::from_gamma({cplx(1.0), cplx(0.8)}),
                    NotPositiveDefinite);
    CHECK_THROWS_AS(Covariance::from_gamma({cplx(1.0), cplx(1.2, 0.1)}),
                    NotPositiveDefinite);
    const double nan = std::nan("");
    CHECK_THROWS_AS(Covariance::two_dependent(nan, 0.0), DomainError);
    std::vector<cplx> too_long(70, cplx(0.0));
    too_long[0] = 1.0;
    CHECK_THROWS_AS(Covariance::from_gamma(too_long), DomainError);
}

TEST_CASE("gamma accessor and effective order") {
    auto cov = complex_example();
    CHECK(cov.gamma(1) == cplx(0.3, 0.2));
    CHECK(cov.gamma(-1) == cplx(0.3, -0.2));
    CHECK(cov.gamma(5) == cplx(0.0));
    CHECK_FALSE(cov.is_real());
    auto padded = Covariance::from_gamma({cplx(1.0), cplx(0.2), cplx(0.0)});
    CHECK(padded.order() == 2);
    CHECK(padded.effective_order() == 1);
    auto iid = Covariance::from_gamma({cplx(1.0)});
    CHECK(iid.effective_order() == 0);
    auto td = iid.as_two_dependent();
    REQUIRE(td.has_value());
    CHECK(td->first == 0.0);
    CHECK(td->second == 0.0);
    CHECK_FALSE(complex_example().as_two_dependent().has_value());
}

TEST_CASE("family recognition round-trips") {
    for (int n = 1; n <= 5; ++n) {
        auto rec = Covariance::binomial(n).as_binomial();
        REQUIRE(rec.has_value());
        CHECK(*rec == n);
    }
    CHECK_FALSE(Covariance::two_dependent(0.2, 0.05).as_binomial().has_value());
    auto td = Covariance::two_dependent(0.4, 0.1).as_two_dependent();
    REQUIRE(td.has_value());
    CHECK(td->first == 0.4);
    CHECK(td->second == 0.1);
}

TEST_CASE("spectral polynomial coefficients") {
    auto sp = spectral_poly(Covariance::two_dependent(0.4, 0.1), 0.5);
    REQUIRE(sp.order == 2);
    REQUIRE(sp.laurent.size() == 5);
    REQUIRE(sp.lift.size() == 5);
    // (b r^2, a r, 1, a r, b r^2) with a = 0.4, b = 0.1, r = 0.5
    CHECK(sp.laurent[0] == cplx(0.1 * 0.25));
    CHECK(sp.laurent[1] == cplx(0.4 * 0.5));
    CHECK(sp.laurent[2] == cplx(1.0));
    CHECK(sp.laurent[3] == cplx(0.4 * 0.5));
    CHECK(sp.laurent[4] == cplx(0.1 * 0.25));
    for (int j = 0; j < 5; ++j) CHECK(sp.lift[j] == sp.laurent[j]);

    // binomial lift at r = 1 is C(2n, j) / C(2n, n)
    auto bl = spectral_poly(Covariance::binomial(2), 1.0);
    CHECK(bl.lift[0] == cplx(1.0 / 6.0));
    CHECK(bl.lift[1] == cplx(4.0 / 6.0));
    CHECK(bl.lift[2] == cplx(1.0));
    CHECK(bl.lift[3] == cplx(4.0 / 6.0));
    CHECK(bl.lift[4] == cplx(1.0 / 6.0));

    // self-inversive: lift[2n - j] = conj(lift[j]) exactly
    auto sc = spectral_poly(complex_example(), 0.7);
    for (int j = 0; j <= 2 * sc.order; ++j)
        CHECK(sc.lift[2 * sc.order - j] == std::conj(sc.lift[j]));

    auto iid = spectral_poly(Covariance::from_gamma({cplx(1.0)}), 0.9);
    CHECK(iid.order == 0);
    CHECK(iid.eval_circle(1.234) == 1.0);
}

TEST_CASE("circle density evaluation") {
    auto cov = Covariance::two_dependent(0.2, 0.05);
    auto sp = spectral_poly(cov, 0.8);
    for (double theta : {0.0, 0.5, 2.0, 3.14159}) {
        const double direct = 1.0 + 2.0 * (0.2 * 0.8 * std::cos(theta)
                                           + 0.05 * 0.64 * std::cos(2.0 * theta));
        CHECK(sp.eval_circle(theta) == doctest::Approx(direct).epsilon(1e-14));
        CHECK(sp.eval_circle(theta) > 0.0);
    }
}

TEST_CASE("spectral density stays positive inside the disk") {
    for (double r : {0.5, 0.9, 0.99}) {
        CHECK(min_spectral_density(Covariance::two_dependent(0.4, 0.1), r) > 0.0);
        CHECK(min_spectral_density(Covariance::binomial(2), r) > 0.0);
        CHECK(min_spectral_density(complex_example(), r) > 0.0);
    }
    // degenerate corner touches zero at r = 1
    CHECK(min_spectral_density(Covariance::binomial(2), 1.0)
          == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("factorization of the binomial family is exact") {
    for (int n = 1; n <= 4; ++n) {
        auto filter = spectral_factorize(Covariance::binomial(n));
        REQUIRE(filter.order() == n);
        double c2nn = 1.0;
        for (int j = 1; j <= n; ++j)
            c2nn = c2nn * (n + j) / j;
        const double scale = std::sqrt(c2nn);
        double binom = 1.0;
        for (int j = 0; j <= n; ++j) {
            CHECK(std::abs(filter.taps[j] - binom / scale) < 1e-12);
            binom = binom * (n - j) / (j + 1.0);
        }
    }
}

TEST_CASE("factorization round-trip") {
    const std::vector<Covariance> covs = {
        Covariance::from_gamma({cplx(1.0)}),
        Covariance::two_dependent(0.2, 0.05),
        Covariance::two_dependent(-0.3, 0.05),
        Covariance::two_dependent(0.3, -0.2),   // line boundary
        Covariance::two_dependent(2.0 * std::sqrt(0.12), 0.3), // ellipse boundary
        Covariance::binomial(3),
        complex_example(),
    };
    for (const auto& cov : covs) {
        auto filter = spectral_factorize(cov);
        CHECK(filter.roundtrip_residual(cov) < 1e-10);
        CHECK(filter.order() == cov.effective_order());
        double norm = 0.0;
        for (const auto& t : filter.taps) norm += std::norm(t);
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    }
    auto iid = spectral_factorize(Covariance::from_gamma({cplx(1.0)}));
    REQUIRE(iid.taps.size() == 1);
    CHECK(std::abs(iid.taps[0] - cplx(1.0)) < 1e-15);
}

TEST_CASE("factorization determinism") {
    auto cov = complex_example();
    auto f1 = spectral_factorize(cov);
    auto f2 = spectral_factorize(cov);
    REQUIRE(f1.taps.size() == f2.taps.size());
    for (std::size_t j = 0; j < f1.taps.size(); ++j)
        CHECK(f1.taps[j] == f2.taps[j]);
}
