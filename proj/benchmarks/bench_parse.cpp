// Throughput benchmarks: table construction, exhaustive parsing of small
// ambiguous inputs, and beam parsing of large synthetic lattices.

#include <benchmark/benchmark.h>

#include "latglr/beam.hpp"
#include "latglr/engine.hpp"
#include "latglr/testgen.hpp"

using namespace latglr;

namespace {

void BM_BuildTable(benchmark::State& state) {
    Grammar g = benchmark_grammar(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        SlrTable t = build_slr_table(g);
        benchmark::DoNotOptimize(t.state_count);
    }
    state.counters["rules"] = static_cast<double>(g.rules.size());
}
BENCHMARK(BM_BuildTable)->Arg(50)->Arg(200);

void BM_ExhaustiveAmbiguous(benchmark::State& state) {
    Grammar g = parse_grammar(kG2);
    SlrTable t = build_slr_table(g);
    BigramModel b = parse_bigram("");
    std::string text;
    for (int i = 0; i < state.range(0); ++i)
        text += std::to_string(i) + " " + std::to_string(i + 1) + " a -1\n";
    Lattice l = parse_lattice(text);
    for (auto _ : state) {
        ParseResult res = run_exhaustive(g, t, l, b, {});
        benchmark::DoNotOptimize(res.accepted);
    }
}
BENCHMARK(BM_ExhaustiveAmbiguous)->Arg(8)->Arg(16)->Arg(32);

void BM_BeamParse(benchmark::State& state) {
    Grammar g = benchmark_grammar(200);
    SlrTable t = build_slr_table(g);
    BigramModel b = parse_bigram("");
    Lattice l = benchmark_lattice(g, 9000 + state.range(0),
                                  static_cast<int>(state.range(0)));
    BeamConfig bc;
    bc.beam_width = 8.0;
    long accepted = 0;
    for (auto _ : state) {
        ParseResult res = run_beam(g, t, l, b, {}, bc);
        accepted += res.accepted ? 1 : 0;
    }
    state.counters["hyps"] = static_cast<double>(l.hypotheses.size());
    state.counters["accepted"] = static_cast<double>(accepted);
}
BENCHMARK(BM_BeamParse)->Arg(56)->Arg(120)->Arg(202)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
