#include "gafzeros/fit.hpp"

#include <cmath>
#include <vector>

#include "gafzeros/errors.hpp"

namespace gafzeros {

double power_law_limit(std::span<const double> x, std::span<const double> g,
                       double beta) {
    const std::size_t m = x.size();
    if (m == 0) throw DegenerateInput("no nodes for extrapolation");
    if (g.size() != m) throw DomainError("node and value counts differ");
    if (!(beta > 0.0)) throw DomainError("exponent must be positive");
    std::vector<double> t(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!(x[i] > 0.0)) throw DomainError("nodes must be positive");
        t[i] = std::pow(x[i], beta);
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (t[i] == t[j]) throw DomainError("nodes must be distinct");

    // Neville evaluation at t == 0 of the polynomial through (t_i, g_i).
    std::vector<double> table(g.begin(), g.end());
    for (std::size_t s = 1; s < m; ++s)
        for (std::size_t i = 0; i + s < m; ++i)
            table[i] = (t[i + s] * table[i] - t[i] * table[i + 1])
                     / (t[i + s] - t[i]);
    return table[0];
}

LineFit loglog_fit(std::span<const double> x, std::span<const double> y) {
    const std::size_t m = x.size();
    if (m < 2) throw DegenerateInput("need at least two points for a line fit");
    if (y.size() != m) throw DomainError("coordinate counts differ");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw DomainError("log-log fit needs positive coordinates");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(m);
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw DomainError("degenerate abscissae");
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

} // namespace gafzeros
