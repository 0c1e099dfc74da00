#include <benchmark/benchmark.h>

#include <random>

#include "fibertrace/errors.hpp"
#include "fibertrace/oracle.hpp"
#include "fibertrace/pipeline.hpp"
#include "generators.hpp"

using namespace fibertrace;

namespace {

AnnularDiagram knot_of_length(int strands, int length, unsigned seed) {
    std::mt19937 rng(seed);
    for (;;) {
        try {
            auto d = build_diagram(parse_morse_word(testing::closed_braid_word(rng, strands, length)), strands);
            if (genericity_check(d, EmbeddingConfig{}).ok()) return d;
        } catch (const Error&) {
        }
    }
}

// Odd lengths: an even word on 4 strands never closes to a knot.
void BM_Writhes(benchmark::State& state) {
    auto d = knot_of_length(4, static_cast<int>(state.range(0)), 1);
    for (auto _ : state) {
        auto a = analyze(d);
        benchmark::DoNotOptimize(a.table);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Writhes)->Arg(15)->Arg(31)->Arg(63)->Arg(127)->Complexity(benchmark::oN)->Unit(benchmark::kMillisecond);

// Lengths n+1 keep the permutation parity right for an n-cycle.
void BM_Strands(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto d = knot_of_length(n, 3 * (n - 1), 2);
    for (auto _ : state) {
        auto a = analyze(d);
        benchmark::DoNotOptimize(a.table);
    }
}
BENCHMARK(BM_Strands)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

void BM_SampledSweep(benchmark::State& state) {
    auto d = build_diagram(parse_morse_word("s1 s3 s2 s1 s3 s2 S3 S2 S3"), 4);
    auto e = embed_generic(d, {});
    for (auto _ : state) {
        auto s = sampled_sweep(d, e, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(s.crossings);
    }
}
BENCHMARK(BM_SampledSweep)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
