#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gafzeros/puiseux.hpp>
#include <gafzeros/rootfind.hpp>

#include <cmath>
#include <complex>
#include <vector>

using namespace gafzeros;

TEST_CASE("branch coefficients") {
    auto b1 = puiseux_branches(1);
    REQUIRE(b1.size() == 2);
    CHECK(std::abs(b1[0].b - cplx(std::sqrt(2.0))) < 1e-15);
    CHECK(std::abs(b1[1].b + cplx(std::sqrt(2.0))) < 1e-15);
    CHECK(std::abs(b1[0].second + cplx(1.0)) < 1e-15); // -b^2/2 = -1

    for (int n : {2, 3, 5}) {
        auto br = puiseux_branches(n);
        REQUIRE(br.size() == 2 * static_cast<std::size_t>(n));
        double c = 1.0;
        for (int j = 1; j < n; ++j)
            c = c * (n - 1 + j) / j;
        const double mag = std::pow(2.0 * c, 1.0 / (2.0 * n));
        for (int j = 0; j < 2 * n; ++j) {
            CHECK(std::abs(br[j].b) == doctest::Approx(mag).epsilon(1e-13));
            CHECK(std::abs(br[j].second + 0.5 * br[j].b * br[j].b) < 1e-13);
            // the first n branches point into the disk
            if (j < n) CHECK(br[j].b.real() > 0.0);
            else CHECK(br[j].b.real() < 0.0);
        }
    }
    CHECK_THROWS_AS(puiseux_branches(0), DomainError);
    CHECK_THROWS_AS(puiseux_branches(40), DomainError);
}

TEST_CASE("order-1 prediction against the closed-form root") {
    // exact inside root (-1 + sqrt(1-r^2)) / r; two-term branch error
    // behaves like (3 sqrt(2) / 4) (1-r)^(3/2)
    for (double r : {0.99, 0.999, 0.9999}) {
        const double s = std::sqrt(1.0 - r * r);
        const cplx exact((-1.0 + s) / r, 0.0);
        const cplx pred = predicted_root(1, 0, r);
        CHECK(std::abs(pred - exact) < 4.0 * std::pow(1.0 - r, 1.5));
    }
}

TEST_CASE("predictions converge to the tracked roots") {
    for (int n : {2, 3}) {
        auto cov = Covariance::binomial(n);
        double prev = 1e300;
        for (double eps : {1e-3, 1e-4, 1e-5}) {
            const double r = 1.0 - eps;
            auto rs = theta_roots(cov, r);
            double worst = 0.0;
            for (const auto& z : rs.roots) {
                double best = 1e300;
                for (int j = 0; j < 2 * n; ++j)
                    best = std::min(best, std::abs(z - predicted_root(n, j, r)));
                worst = std::max(worst, best);
            }
            CHECK(worst < prev);
            prev = worst;
        }
        // three-term truncation: error well below the branch spacing scale
        CHECK(prev < std::pow(1e-5, 3.0 / (2.0 * n)) * 10.0);
    }
}

TEST_CASE("second-term constants of the binomial family") {
    CHECK(dn_constant(1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(dn_constant(2) == doctest::Approx(std::pow(2.0, -1.25)).epsilon(1e-14));
    CHECK(dn_constant(3)
          == doctest::Approx(std::pow(6.0, 1.0 / 6.0) / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(dn_constant(0), DomainError);
}

TEST_CASE("asymptotic case prediction for the two-parameter family") {
    // ellipse boundary, b = 0.3
    const double a_ell = 2.0 * std::sqrt(0.3 * 0.4);
    auto p1 = case_prediction(a_ell, 0.3);
    CHECK(p1.label == CaseLabel::CaseI);
    CHECK(p1.exponent.num == 1);
    CHECK(p1.exponent.den == 2);
    REQUIRE(p1.constant.has_value());
    CHECK(*p1.constant == doctest::Approx(std::sqrt(0.6 / 0.8)).epsilon(1e-12));

    // line boundary
    auto p2 = case_prediction(0.3, -0.2);
    CHECK(p2.label == CaseLabel::CaseII);
    CHECK(p2.exponent.value() == 0.5);
    REQUIRE(p2.constant.has_value());
    CHECK(*p2.constant == doctest::Approx(0.5 * std::sqrt(1.4 / 2.2)).epsilon(1e-12));

    // degenerate corner
    auto p3 = case_prediction(2.0 / 3.0, 1.0 / 6.0);
    CHECK(p3.label == CaseLabel::CaseIII);
    CHECK(p3.exponent.num == 3);
    CHECK(p3.exponent.den == 4);
    REQUIRE(p3.constant.has_value());
    CHECK(*p3.constant == doctest::Approx(std::pow(2.0, -1.25)).epsilon(1e-14));

    // interior: exponent 0 with the limiting constant
    auto p4 = case_prediction(0.2, 0.05);
    CHECK(p4.label == CaseLabel::CaseIV);
    CHECK(p4.exponent.num == 0);
    REQUIRE(p4.constant.has_value());
    CHECK(*p4.constant == doctest::Approx(0.042388074464405845).epsilon(1e-9));

    CHECK_THROWS_AS(case_prediction(0.9, 0.9), OutsideRegion);
    // decimal corner input sits outside at the default tolerance
    CHECK(case_prediction(0.666666666666667, 0.166666666666667, 1e-9).label
          == CaseLabel::CaseIII);
}

TEST_CASE("limiting interior constant") {
    CHECK(interior_constant(0.0, 0.0) == 0.0);
    // closed form against the r = 1 residue route
    CHECK(interior_constant(0.2, 0.05)
          == doctest::Approx(0.042388074464405845).epsilon(1e-12));
    CHECK(interior_constant(-0.2, 0.05)
          == doctest::Approx(interior_constant(0.2, 0.05)).epsilon(1e-12));
    // a = 0 goes through the residue route; both signs of b give 1/4 at |b| = 0.3
    CHECK(interior_constant(0.0, 0.3) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(interior_constant(0.0, -0.3) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(interior_constant(0.45, -0.02)
          == doctest::Approx(0.94013347007807457).epsilon(1e-9));
    CHECK_THROWS_AS(interior_constant(0.9, 0.9), OutsideRegion);
    // boundary points have no finite limit
    CHECK_THROWS_AS(interior_constant(0.3, -0.2), DomainError);
    CHECK_THROWS_AS(interior_constant(2.0 / 3.0, 1.0 / 6.0), DomainError);
}

TEST_CASE("exponent law from circle multiplicities") {
    // binomial family is recognized directly
    for (int n : {1, 2, 3}) {
        auto ex = general_exponent(Covariance::binomial(n));
        CHECK(ex.label == CaseLabel::Binomial);
        CHECK(ex.param == n);
        CHECK(ex.exponent.num == 2L * n - 1);
        CHECK(ex.exponent.den == 2L * n);
        REQUIRE(ex.constant.has_value());
        CHECK(*ex.constant == doctest::Approx(dn_constant(n)).epsilon(1e-13));
    }

    // no dependence: bounded correction, exponent 0
    auto iid = general_exponent(Covariance::from_gamma({cplx(1.0)}));
    CHECK(iid.exponent.num == 0);

    // real two-parameter covariances reuse the case analysis
    auto td = general_exponent(Covariance::two_dependent(0.3, -0.2));
    CHECK(td.label == CaseLabel::CaseII);

    // density 1 + cos(3 theta): three double zeros on the circle, half-
    // multiplicity 1, exponent 1/2
    auto c3 = general_exponent(
        Covariance::from_gamma({cplx(1.0), cplx(0.0), cplx(0.0), cplx(0.5)}));
    CHECK(c3.label == CaseLabel::GeneralMultiplicity);
    CHECK(c3.exponent.num == 1);
    CHECK(c3.exponent.den == 2);
    CHECK(c3.param == 1);
    CHECK_FALSE(c3.constant.has_value());
}

TEST_CASE("phase identities behind the asymptotic constants") {
    for (int n = 1; n <= 8; ++n) {
        auto rep = identity_checks(n);
        CHECK(rep.n == n);
        CHECK(rep.sum_residual < 1e-12);
        CHECK(rep.product_residual < 1e-12);
        CHECK(rep.sum_sq_residual < 1e-12);
        CHECK(rep.sum_sq_cancels == (n >= 2));
    }
}
