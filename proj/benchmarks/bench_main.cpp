#include <benchmark/benchmark.h>

#include <gafzeros/covariance.hpp>
#include <gafzeros/expected_zeros.hpp>
#include <gafzeros/montecarlo.hpp>
#include <gafzeros/rng.hpp>
#include <gafzeros/rootfind.hpp>

#include <complex>
#include <vector>

using namespace gafzeros;

namespace {

std::vector<cplx> random_coeffs(int degree, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<cplx> coeffs(degree + 1);
    for (auto& c : coeffs)
        c = cplx(2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0);
    if (std::abs(coeffs.back()) < 0.1) coeffs.back() += cplx(0.5);
    return coeffs;
}

void bm_poly_roots(benchmark::State& state) {
    const auto coeffs = random_coeffs(static_cast<int>(state.range(0)), 31);
    for (auto _ : state) {
        auto rs = poly_roots(coeffs);
        benchmark::DoNotOptimize(rs.roots.data());
    }
}

void bm_correction(benchmark::State& state, Method method) {
    auto cov = Covariance::two_dependent(0.4, 0.1);
    for (auto _ : state) {
        const auto res = expected_zeros(cov, 0.9, method);
        benchmark::DoNotOptimize(res.correction);
    }
}

void bm_residue(benchmark::State& state) { bm_correction(state, Method::Residue); }
void bm_contour(benchmark::State& state) { bm_correction(state, Method::ContourQuad); }
void bm_area(benchmark::State& state) { bm_correction(state, Method::AreaQuad); }

void bm_factorize(benchmark::State& state) {
    auto cov = Covariance::from_gamma({cplx(1.0), cplx(0.3, 0.2), cplx(0.1, -0.1)});
    for (auto _ : state) {
        auto filter = spectral_factorize(cov);
        benchmark::DoNotOptimize(filter.taps.data());
    }
}

void bm_mc_trial(benchmark::State& state) {
    auto cov = Covariance::binomial(2);
    auto filter = spectral_factorize(cov);
    std::uint64_t stream = 0;
    for (auto _ : state) {
        auto xi = sample_coefficients(filter, 401, 1, stream++);
        benchmark::DoNotOptimize(count_zeros_in_disk(xi, 0.8));
    }
}

} // namespace

BENCHMARK(bm_poly_roots)->Arg(8)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_residue);
BENCHMARK(bm_contour);
BENCHMARK(bm_area)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_factorize);
BENCHMARK(bm_mc_trial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
