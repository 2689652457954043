#include <benchmark/benchmark.h>

#include "ffh/classgroup.hpp"
#include "ffh/heegner.hpp"
#include "ffh/isogeny.hpp"

using namespace ffh;

namespace {

QuadFieldPtr running()
{
    auto f = FiniteField::prime(3);
    return make_field(f, parse_poly(f, "T^3+2*T+1"));
}

void BM_PicGroup(benchmark::State & st)
{
    auto K = running();
    Order O(K, pow(parse_poly(K->base(), "T"), static_cast<unsigned>(st.range(0))));
    for (auto _ : st)
        benchmark::DoNotOptimize(pic_group(O).size());
}
BENCHMARK(BM_PicGroup)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_HnGroup(benchmark::State & st)
{
    auto K = running();
    auto p = parse_poly(K->base(), "T");
    for (auto _ : st)
        benchmark::DoNotOptimize(hn_group(K, p, static_cast<int>(st.range(0))).order);
}
BENCHMARK(BM_HnGroup)->DenseRange(1, 5)->Unit(benchmark::kMicrosecond);

void BM_ClassNumberZeta(benchmark::State & st)
{
    auto f = FiniteField::prime(5);
    auto K = make_field(f, parse_poly(f, "T^5+T+3"));
    for (auto _ : st)
        benchmark::DoNotOptimize(class_number_zeta(*K));
}
BENCHMARK(BM_ClassNumberZeta)->Unit(benchmark::kMicrosecond);

void BM_CanonicalFactorization(benchmark::State & st)
{
    auto K = running();
    auto OK = Order::maximal(K);
    auto P = primes_above(K, parse_poly(K->base(), "T+1")).front();
    auto b = ideal_inverse(P, OK);
    for (auto _ : st)
        benchmark::DoNotOptimize(canonical_factorization(OK.lattice(), b).d);
}
BENCHMARK(BM_CanonicalFactorization)->Unit(benchmark::kMicrosecond);

void BM_CyclicIsogenies(benchmark::State & st)
{
    auto K = running();
    auto const & f = K->base();
    HeegnerTower tw(check_heegner_hypothesis(K, parse_poly(f, "T+1"), parse_poly(f, "T")));
    auto x = tw.heegner_point(4);
    auto y = tw.galois_act(tw.element_of(4, 1), x);
    auto d = parse_poly(f, "T^2+1");
    for (auto _ : st)
        benchmark::DoNotOptimize(cyclic_isogenies_between(x.pt.L, y.pt.L, d).size());
}
BENCHMARK(BM_CyclicIsogenies)->Unit(benchmark::kMicrosecond);

void BM_HeegnerTowerLevel(benchmark::State & st)
{
    auto K = running();
    auto const & f = K->base();
    auto cfg = check_heegner_hypothesis(K, parse_poly(f, "T+1"), parse_poly(f, "T"));
    for (auto _ : st) {
        HeegnerTower tw(cfg);
        benchmark::DoNotOptimize(tw.verify_geometric_level(K->D().monic(), static_cast<int>(st.range(0))));
    }
}
BENCHMARK(BM_HeegnerTowerLevel)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
