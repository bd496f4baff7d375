// Microbenchmarks for the hot paths: table construction, transforms, the
// exponential-sum tables, the discrepancy scan, and the walk-count DP.
#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "charsum/characters.hpp"
#include "charsum/dft.hpp"
#include "charsum/discrepancy.hpp"
#include "charsum/exp_sums.hpp"
#include "charsum/finite_field.hpp"
#include "charsum/invariant_dims.hpp"
#include "charsum/moments.hpp"

using namespace charsum;

namespace {

void bm_field_build(benchmark::State& state) {
    std::int64_t q = state.range(0);
    for (auto _ : state) {
        FieldTable f(q);
        benchmark::DoNotOptimize(f.generator_index());
    }
}
BENCHMARK(bm_field_build)->Arg(9973)->Arg(65536 + 1)->Arg(390625);

void bm_field_mul(benchmark::State& state) {
    FieldTable f(9973);
    std::vector<felem> xs(4096);
    std::mt19937_64 rng(1);
    for (felem& x : xs) x = static_cast<felem>(rng() % 9972);
    for (auto _ : state) {
        felem acc = f.one();
        for (felem x : xs) acc = f.mul(f.add(acc, x), x);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}
BENCHMARK(bm_field_mul);

void bm_dft(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    std::vector<cplx> x(n);
    std::mt19937_64 rng(2);
    for (cplx& v : x) v = {static_cast<double>(rng() >> 11) * 0x1p-53, 0.5};
    for (auto _ : state) benchmark::DoNotOptimize(dft(x));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(bm_dft)->Arg(199)->Arg(4096)->Arg(9972)->Arg(65536);

void bm_gauss_all(benchmark::State& state) {
    FieldTable f(state.range(0));
    CharTable chars(f);
    for (auto _ : state) benchmark::DoNotOptimize(gauss_all(chars));
}
BENCHMARK(bm_gauss_all)->Arg(199)->Arg(9973);

void bm_kloosterman_all(benchmark::State& state) {
    FieldTable f(9973);
    CharTable chars(f);
    for (auto _ : state) benchmark::DoNotOptimize(kloosterman_all(chars, state.range(0)));
}
BENCHMARK(bm_kloosterman_all)->Arg(2)->Arg(4);

void bm_jacobi_angles_full(benchmark::State& state) {
    FieldTable f(state.range(0));
    CharTable chars(f);
    std::vector<cplx> gauss = gauss_all(chars);
    std::vector<std::int64_t> full;
    for (std::int64_t j = 1; j <= f.q() - 2; ++j) full.push_back(j);
    for (auto _ : state)
        benchmark::DoNotOptimize(jacobi_angles(chars, gauss, {full, full}, 1u << 30));
}
BENCHMARK(bm_jacobi_angles_full)->Arg(199)->Arg(499);

void bm_discrepancy(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    std::vector<double> angles(n);
    std::mt19937_64 rng(3);
    for (double& a : angles) a = static_cast<double>(rng() >> 11) * 0x1p-53;
    for (auto _ : state) {
        std::vector<double> copy = angles;
        benchmark::DoNotOptimize(discrepancy_exact(std::move(copy)));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(bm_discrepancy)->Arg(1000)->Arg(39204)->Arg(1000000);

void bm_moment(benchmark::State& state) {
    FieldTable f(199);
    CharTable chars(f);
    std::vector<cplx> gauss = gauss_all(chars);
    std::vector<std::int64_t> full;
    for (std::int64_t j = 1; j <= 197; ++j) full.push_back(j);
    std::vector<std::vector<std::int64_t>> slots(2, full);
    for (auto _ : state)
        benchmark::DoNotOptimize(moment(chars, gauss, slots, state.range(0), 4));
}
BENCHMARK(bm_moment)->Arg(0)->Arg(2);

void bm_walk_counts(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(r_g2(state.range(0)));
}
BENCHMARK(bm_walk_counts)->Arg(12)->Arg(24);

void bm_r_sl(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(r_sl(3, state.range(0), state.range(0)));
}
BENCHMARK(bm_r_sl)->Arg(6)->Arg(10);

} // namespace

BENCHMARK_MAIN();
