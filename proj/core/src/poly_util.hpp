#pragma once

// Internal polynomial helpers shared by the library sources. Coefficients
// are ascending: c[k] multiplies z^k.

#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace gafzeros::detail {

using cplx = std::complex<double>;

inline cplx eval_poly(std::span<const cplx> c, cplx z) {
    cplx p = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) p = p * z + c[k];
    return p;
}

struct PolyPair {
    cplx p;
    cplx dp;
};

inline PolyPair eval_poly_pair(std::span<const cplx> c, cplx z) {
    const int d = static_cast<int>(c.size()) - 1;
    cplx p = c[d], dp = 0.0;
    for (int k = d - 1; k >= 0; --k) {
        dp = dp * z + p;
        p = p * z + c[k];
    }
    return {p, dp};
}

inline std::vector<cplx> differentiate(std::span<const cplx> c) {
    std::vector<cplx> d;
    if (c.size() <= 1) return d;
    d.resize(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k)
        d[k - 1] = static_cast<double>(k) * c[k];
    return d;
}

// Complex division without the libc checked helper; fine for the
// well-scaled operands used here.
inline cplx cdiv(cplx a, cplx b) {
    double br = b.real(), bi = b.imag();
    double d = br * br + bi * bi;
    return {(a.real() * br + a.imag() * bi) / d,
            (a.imag() * br - a.real() * bi) / d};
}

inline cplx pow_int(cplx z, int n) {
    cplx acc = 1.0;
    cplx base = z;
    for (int e = n; e > 0; e >>= 1) {
        if (e & 1) acc *= base;
        base *= base;
    }
    return acc;
}

// Exact for every binomial coefficient below 2^53.
inline double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double v = 1.0;
    for (int j = 1; j <= k; ++j) {
        v = v * static_cast<double>(n - k + j);
        v = v / static_cast<double>(j);
    }
    return v;
}

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

} // namespace gafzeros::detail
