#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "latdisc/arith.hpp"
#include "latdisc/body.hpp"
#include "latdisc/lattice.hpp"
#include "latdisc/resonance.hpp"
#include "latdisc/spectrum.hpp"

using namespace latdisc;

namespace {

const body_geometry& sphere() {
    static const auto g =
        body_geometry::analyze(revolution_profile::make_sphere());
    return g;
}

const body_geometry& bumpy() {
    static const auto g =
        body_geometry::analyze(revolution_profile::make_fourier({1.0, 0.05}));
    return g;
}

void bm_count_sphere(benchmark::State& state) {
    const double t = static_cast<double>(state.range(0));
    std::int64_t n = 0;
    for (auto _ : state) {
        const auto r = count_points(sphere(), t);
        benchmark::DoNotOptimize(n = r.count);
    }
    state.counters["points"] = static_cast<double>(n);
}
BENCHMARK(bm_count_sphere)->Arg(1000)->Arg(100000)->Arg(1000000);

void bm_count_bumpy(benchmark::State& state) {
    const double t = static_cast<double>(state.range(0));
    std::int64_t n = 0;
    for (auto _ : state) {
        const auto r = count_points(bumpy(), t);
        benchmark::DoNotOptimize(n = r.count);
    }
    state.counters["points"] = static_cast<double>(n);
}
BENCHMARK(bm_count_bumpy)->Arg(1000)->Arg(100000);

void bm_sieve_build(benchmark::State& state) {
    const auto n = state.range(0);
    for (auto _ : state) {
        const auto tab = arith_tables::build(n);
        benchmark::DoNotOptimize(tab.r2(n));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bm_sieve_build)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void bm_series_eval(benchmark::State& state) {
    const auto tab = arith_tables::build(2000);
    const double t = static_cast<double>(state.range(0));
    const auto s = build_series(sphere(), tab, t, coeff_model::unit);
    double v = 0.0;
    for (auto _ : state) benchmark::DoNotOptimize(v = eval_S(s, t));
    state.counters["classes"] = static_cast<double>(s.classes.size());
}
BENCHMARK(bm_series_eval)->Arg(50)->Arg(200);

void bm_borel_mean(benchmark::State& state) {
    const auto tab = arith_tables::build(2000);
    borel_options opt;
    opt.nodes = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const auto r = borel_mean(sphere(), 12.0, opt);
        benchmark::DoNotOptimize(r.value);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_borel_mean)->Arg(257)->Arg(4097)->Arg(65537)->Unit(benchmark::kMillisecond);

void bm_witness_scan(benchmark::State& state) {
    std::mt19937_64 rng(7);
    const auto inst = random_lemma_instance(rng, 4, 3.0, 64.0);
    search_options opt;
    opt.budget = state.range(0);
    for (auto _ : state) {
        const auto w = search_witness(inst, opt);
        benchmark::DoNotOptimize(w.sum_value);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_witness_scan)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
