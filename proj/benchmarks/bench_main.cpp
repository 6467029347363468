#include <benchmark/benchmark.h>

#include "respo/actors.hpp"
#include "respo/benchgen.hpp"
#include "respo/game.hpp"
#include "respo/parser.hpp"
#include "respo/responsibility.hpp"

namespace {

const char* kWindowProgram = R"(
lightning = w = 3;
module Window
  w : [0..3] init 0;
  [install] w = 0 -> w'=r;
  [a_throws] w = 2 -> w := 3;
  [a_throws] w = 1 -> ;
endmodule
module Rebeca
  r : [0..2] init 0;
  [] r = 0 -> r := 1;
  [] r = 0 -> r := 2;
  [install] r > 0 -> ;
endmodule
module Ada
  a : [0..2] init 0;
  [] a = 0 -> a := 1;
  [] a = 0 -> a := 2;
  [a_throws] a = 1 -> a := 2;
endmodule
)";

void BM_BuildScheduledTs(benchmark::State& state) {
  respo::Program p = respo::parse_program(kWindowProgram);
  for (auto _ : state) {
    respo::SchedulerProgram sp = respo::with_scheduler(p);
    benchmark::DoNotOptimize(respo::build_ts(sp.program).num_states);
  }
}
BENCHMARK(BM_BuildScheduledTs);

void BM_AttractorLinearChain(benchmark::State& state) {
  respo::GeneratedModel gm =
      respo::gen_linear(static_cast<uint32_t>(state.range(0)), 7);
  for (auto _ : state) {
    respo::SafetyGame g = respo::build_forward_game(gm.lts, gm.signature, 0x55);
    benchmark::DoNotOptimize(respo::value(g));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AttractorLinearChain)->Range(1 << 12, 1 << 18)->Complexity();

void BM_ShapleyExactRandom(benchmark::State& state) {
  respo::GeneratedModel gm =
      respo::gen_random(400, static_cast<uint32_t>(state.range(0)), 99);
  for (auto _ : state) {
    respo::CoalitionOracle oracle(gm.lts, gm.signature,
                                  respo::CoalitionOracle::Mode::forward);
    benchmark::DoNotOptimize(respo::shapley_exact(oracle).coalitions);
  }
}
BENCHMARK(BM_ShapleyExactRandom)->DenseRange(6, 12, 2);

void BM_ShapleySampledRandom(benchmark::State& state) {
  respo::GeneratedModel gm = respo::gen_random(400, 16, 7);
  respo::CoalitionOracle oracle(gm.lts, gm.signature,
                                respo::CoalitionOracle::Mode::forward);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        respo::shapley_sampled(oracle, static_cast<uint64_t>(state.range(0)), 1).samples);
}
BENCHMARK(BM_ShapleySampledRandom)->Arg(256)->Arg(1024);

void BM_ActionSeparate(benchmark::State& state) {
  respo::GeneratedModel gm = respo::gen_random(2000, 4, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(respo::action_separate(gm.lts).lts.num_states);
}
BENCHMARK(BM_ActionSeparate);

}  // namespace
