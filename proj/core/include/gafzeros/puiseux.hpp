#pragma once

#include <optional>

#include "gafzeros/covariance.hpp"

namespace gafzeros {

/**
 * Puiseux data for the binomial family of order n, whose lifted spectral
 * density at r = 1 is proportional to (z+1)^(2n). As r -> 1- the 2n roots
 * split off the degenerate point -1 along the branches
 *
 *   z_j(r) = -1 + b_j (1-r)^(1/(2n)) - (1/2) b_j^2 (1-r)^(1/n) + O((1-r)^(3/(2n)))
 *
 * with b_j = (2 C(2(n-1), n-1))^(1/(2n)) exp((2j - n + 1) pi i / (2n)),
 * j = 0..2n-1. Exactly the n branches with Re b_j > 0 (j < n) enter the
 * unit disk.
 */
struct PuiseuxBranch {
    int n = 0;
    int j = 0;
    cplx b;        // first-order coefficient
    cplx second;   // coefficient of (1-r)^(1/n), equal to -b^2/2
};

std::vector<PuiseuxBranch> puiseux_branches(int n);

// Two-term branch prediction -1 + b_j t - (1/2) b_j^2 t^2, t = (1-r)^(1/(2n)).
cplx predicted_root(int n, int j, double r);

// Coefficient D_n of the second asymptotic term for the binomial family:
// expected zeros = r^2/(1-r^2) - D_n (1-r^2)^(-(2n-1)/(2n)) + lower order,
// D_n = C(2(n-1), n-1)^(1/(2n)) / (2n sin(pi/(2n))).
double dn_constant(int n);

// Exact rational exponent of (1-r^2)^(-1) in the second asymptotic term.
struct Exponent {
    long num = 0;
    long den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

enum class CaseLabel {
    CaseI,                // ellipse boundary, 1/6 < b <= 1/2
    CaseII,               // line boundary, -1/2 <= b < 1/6
    CaseIII,              // degenerate corner (+-2/3, 1/6)
    CaseIV,               // interior: correction tends to a constant
    Binomial,             // binomial family of order param
    GeneralMultiplicity,  // from unit-circle zero multiplicities, k = param
};

const char* case_label_name(CaseLabel label);

/**
 * Predicted second-order asymptotics of the expected zero count:
 * correction(r) ~ -constant * (1 - r^2)^(-exponent) as r -> 1.
 * constant is present when the covariance belongs to a family with a known
 * closed form (two-parameter family, binomial); param carries the family
 * order or the maximal half-multiplicity.
 */
struct AsymptoticPrediction {
    Exponent exponent;
    std::optional<double> constant;
    CaseLabel label = CaseLabel::GeneralMultiplicity;
    int param = 0;
};

/**
 * Asymptotic prediction for the two-parameter family:
 *   ellipse boundary: (1/2, sqrt(2b / (6b - 1)))
 *   line boundary:    (1/2, (1/2) sqrt((1 - 2b) / (1 - 6b)))
 *   corner:           (3/4, 2^(-5/4))
 *   interior:         (0, C(a, b)), the finite limit of -correction at r = 1
 * Throws OutsideRegion outside the admissible region. tol is the boundary
 * classification tolerance (pass ~1e-9 for decimal inputs).
 */
AsymptoticPrediction case_prediction(double a, double b, double tol = 1e-12);

// Limiting interior constant C(a, b) = -lim_{r->1} correction(r): closed
// form on the interior of the ellipse component (in |a|), residue sum at
// r = 1 elsewhere in the interior.
double interior_constant(double a, double b);

/**
 * Exponent law from the unit-circle zero structure of the spectral density:
 * zeros of multiplicity 2k give exponent (2k-1)/(2k) with k the maximal
 * half-multiplicity; no circle zeros give exponent 0. Recognized families
 * (binomial, real two-parameter) are labeled and carry their constant;
 * otherwise the multiplicities come from clustering the lifted roots at
 * r = 1 (OddMultiplicity if a circle cluster has odd size).
 */
AsymptoticPrediction general_exponent(const Covariance& cov);

/**
 * Verification of the closed-form identities behind the asymptotic
 * constants, for the inside-branch phases e_k = exp((2k - n + 1) pi i / (2n)):
 *   sum_{k<n} e_k = 1 / sin(pi / (2n)),
 *   sum_{k<n} e_k^2 = 0 for n >= 2 (equals 1 for n = 1),
 *   prod_{j != k} (e_k - e_j) = 2n (-1)^(n-1) / e_k over all 2n phases.
 */
struct IdentityReport {
    int n = 0;
    double sum_residual = 0.0;      // |sum e_k - 1/sin(pi/2n)|
    double sum_sq_residual = 0.0;   // |sum e_k^2 - (n == 1 ? 1 : 0)|
    bool sum_sq_cancels = false;    // the n >= 2 cancellation case
    double product_residual = 0.0;  // max_k |prod - target| / (2n)
};

IdentityReport identity_checks(int n);

} // namespace gafzeros
