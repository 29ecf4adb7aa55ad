#include "gafzeros/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "gafzeros/errors.hpp"
#include "gafzeros/rng.hpp"
#include "gafzeros/rootfind.hpp"
#include "poly_util.hpp"

namespace gafzeros {

namespace {

using detail::cplx;

constexpr double kCircleTol = 1e-12;
constexpr int kMaxResamples = 8;
constexpr std::uint64_t kResampleStride = 1ull << 28;

} // namespace

std::vector<cplx> sample_coefficients(const MAFilter& filter, int count,
                                      std::uint64_t seed,
                                      std::uint64_t stream) {
    if (count < 1) throw DomainError("coefficient count must be positive");
    if (filter.taps.empty()) throw DegenerateInput("filter has no taps");
    const int q = filter.order();
    CounterRng rng(seed, stream);
    std::vector<cplx> noise(static_cast<std::size_t>(count + q));
    for (cplx& z : noise) z = rng.next_gaussian();
    std::vector<cplx> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        cplx acc = 0.0;
        for (int j = 0; j <= q; ++j)
            acc += filter.taps[static_cast<std::size_t>(j)]
                 * noise[static_cast<std::size_t>(q + k - j)];
        out[static_cast<std::size_t>(k)] = acc;
    }
    return out;
}

int count_zeros_in_disk(std::span<const cplx> coeffs, double r) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("radius must lie in (0, 1)");
    std::size_t degree = coeffs.size();
    while (degree > 0 && coeffs[degree - 1] == cplx(0.0)) --degree;
    if (degree == 0) throw DegenerateInput("zero polynomial");
    if (degree == 1) return 0; // nonzero constant
    const RootSet rs = poly_roots(coeffs);
    int count = 0;
    for (const cplx& z : rs.roots) {
        const double az = std::abs(z);
        if (std::abs(az - r) < kCircleTol)
            throw ZeroOnCircle("zero within tolerance of the counting circle");
        if (az < r) ++count;
    }
    return count;
}

std::optional<int> winding_number(std::span<const cplx> coeffs, double r) {
    if (!(r > 0.0 && r < 1.0)) return std::nullopt;
    long m = 256;
    const long cap = 1L << 18;
    bool have_prev = false;
    long prev_round = 0;
    while (m <= cap) {
        cplx acc = 0.0;
        for (long k = 0; k < m; ++k) {
            const cplx z =
                std::polar(r, detail::kTwoPi * static_cast<double>(k)
                                  / static_cast<double>(m));
            const auto pair = detail::eval_poly_pair(coeffs, z);
            if (pair.p == cplx(0.0)) return std::nullopt;
            acc += z * detail::cdiv(pair.dp, pair.p);
        }
        const double est = acc.real() / static_cast<double>(m);
        const long rounded = std::lround(est);
        if (std::abs(est - static_cast<double>(rounded)) < 1e-3) {
            if (have_prev && rounded == prev_round)
                return static_cast<int>(rounded);
            have_prev = true;
            prev_round = rounded;
        } else {
            have_prev = false;
        }
        m *= 2;
    }
    return std::nullopt;
}

double truncation_tail_bound(const Covariance& cov, int truncation, double r) {
    if (truncation < 1) throw DomainError("truncation must be positive");
    if (!(r > 0.0 && r < 1.0)) throw DomainError("radius must lie in (0, 1)");
    const int n = cov.effective_order();
    return std::pow(r, 2.0 * truncation + 2.0) * (n + 1.0) / (1.0 - r * r);
}

MonteCarloReport empirical_expected_zeros(const Covariance& cov,
                                          const McConfig& cfg) {
    if (cfg.truncation < 50)
        throw DomainError("truncation degree must be at least 50");
    if (cfg.trials < 1) throw DomainError("trial count must be positive");
    if (cfg.trials >= static_cast<long>(kResampleStride))
        throw DomainError("trial count too large for the stream layout");
    if (!(cfg.r > 0.0 && cfg.r <= 0.95))
        throw DomainError("radius must lie in (0, 0.95]");
    if (cfg.threads < 1) throw DomainError("thread count must be positive");

    const MAFilter filter = spectral_factorize(cov);
    const int count = cfg.truncation + 1;
    const long trials = cfg.trials;

    std::vector<int> counts(static_cast<std::size_t>(trials), 0);
    std::vector<unsigned char> checked(static_cast<std::size_t>(trials), 0);
    std::vector<unsigned char> agreed(static_cast<std::size_t>(trials), 0);
    std::atomic<long> next{0};
    std::atomic<long> resampled{0};
    std::atomic<bool> exhausted{false};

    auto worker = [&]() {
        for (;;) {
            const long t = next.fetch_add(1);
            if (t >= trials) return;
            bool done = false;
            for (int retry = 0; retry <= kMaxResamples; ++retry) {
                const std::uint64_t stream =
                    static_cast<std::uint64_t>(t)
                    + static_cast<std::uint64_t>(retry) * kResampleStride;
                try {
                    const std::vector<cplx> coeffs =
                        sample_coefficients(filter, count, cfg.seed, stream);
                    const int zeros = count_zeros_in_disk(coeffs, cfg.r);
                    counts[static_cast<std::size_t>(t)] = zeros;
                    if (cfg.diagnostics) {
                        const std::optional<int> w =
                            winding_number(coeffs, cfg.r);
                        checked[static_cast<std::size_t>(t)] = 1;
                        agreed[static_cast<std::size_t>(t)] =
                            (w && *w == zeros) ? 1 : 0;
                    }
                    done = true;
                    break;
                } catch (const ZeroOnCircle&) {
                    resampled.fetch_add(1);
                }
            }
            if (!done) exhausted.store(true);
        }
    };

    const long thread_count = std::min<long>(cfg.threads, trials);
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(thread_count));
        for (long i = 0; i < thread_count; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    if (exhausted.load())
        throw ZeroOnCircle("resampling budget exhausted for a trial");

    // Fixed-order reduction keeps the report identical for any thread count.
    long total = 0;
    for (long t = 0; t < trials; ++t)
        total += counts[static_cast<std::size_t>(t)];
    const double mean =
        static_cast<double>(total) / static_cast<double>(trials);
    double ss = 0.0;
    for (long t = 0; t < trials; ++t) {
        const double d = counts[static_cast<std::size_t>(t)] - mean;
        ss += d * d;
    }

    MonteCarloReport rep;
    rep.mean = mean;
    rep.trials = trials;
    rep.truncation = cfg.truncation;
    rep.seed = cfg.seed;
    rep.r = cfg.r;
    rep.degenerate = trials == 1;
    rep.stderr_mean =
        rep.degenerate
            ? 0.0
            : std::sqrt(ss / static_cast<double>(trials - 1)
                        / static_cast<double>(trials));
    rep.tail_bound = truncation_tail_bound(cov, cfg.truncation, cfg.r);
    rep.resampled = resampled.load();
    long wc = 0, wd = 0;
    for (long t = 0; t < trials; ++t) {
        if (checked[static_cast<std::size_t>(t)]) {
            ++wc;
            if (!agreed[static_cast<std::size_t>(t)]) ++wd;
        }
    }
    rep.winding_checked = wc;
    rep.winding_disagreements = wd;
    return rep;
}

} // namespace gafzeros
