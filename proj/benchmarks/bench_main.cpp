#include <benchmark/benchmark.h>

#include <random>

#include "maxreg/compile.hpp"
#include "maxreg/emptiness.hpp"
#include "maxreg/io.hpp"
#include "maxreg/membership.hpp"
#include "maxreg/quantifiers.hpp"

using namespace maxreg;

namespace {

const Alphabet kAB = Alphabet::from_chars("ab");

const char* kExample = "U X. all x. all y. all z. (x<=y & y<=z & x in X & z in X) -> (a(y) & y in X)";

// states x letters, one inc/reset/out/max per transition, acceptance on counter 0
MaxAutomaton random_automaton(std::mt19937_64& rng, std::size_t states, std::size_t counters) {
  MaxAutomaton a(kAB, 0);
  for (std::size_t s = 0; s < states; ++s) a.add_state("q" + std::to_string(s));
  for (std::size_t c = 0; c < counters; ++c) a.add_counter("c" + std::to_string(c));
  std::uniform_int_distribution<std::size_t> state(0, states - 1), kind(0, 3);
  std::uniform_int_distribution<CounterId> counter(0, static_cast<CounterId>(counters - 1));
  for (StateId s = 0; s < states; ++s)
    for (std::size_t l = 0; l < a.letters(); ++l) {
      Transition t{static_cast<StateId>(state(rng)), {}};
      for (int k = 0; k < 2; ++k) {
        const CounterId c = counter(rng);
        switch (kind(rng)) {
          case 0: t.ops.push_back(CounterOp::inc(c)); break;
          case 1: t.ops.push_back(CounterOp::reset(c)); break;
          case 2: t.ops.push_back(CounterOp::out(c)); break;
          default: t.ops.push_back(CounterOp::max(c, counter(rng))); break;
        }
      }
      a.set_transition(s, l, std::move(t));
    }
  a.set_acceptance(Acceptance::unbounded(0));
  return a;
}

void BM_CompileExample(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(compile_text(kExample, kAB).automaton.state_count());
}
BENCHMARK(BM_CompileExample)->Unit(benchmark::kMillisecond);

void BM_LassoMembership(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto a = random_automaton(rng, static_cast<std::size_t>(state.range(0)), 3);
  const auto w = std::get<LassoWord>(parse_word_spec("lasso:abba:aababbab", kAB));
  for (auto _ : state) benchmark::DoNotOptimize(lasso_membership(a, w).verdict);
}
BENCHMARK(BM_LassoMembership)->Arg(4)->Arg(16)->Arg(64);

void BM_RampCertifyGap(benchmark::State& state) {
  const auto gap = load_automaton(MAXREG_DATA_DIR "/gap.json");
  const auto w = std::get<RampWord>(parse_word_spec("ramp:ab:aab:ba", kAB));
  for (auto _ : state) benchmark::DoNotOptimize(ramp_certify(gap, w).verdict);
}
BENCHMARK(BM_RampCertifyGap);

void BM_EmptinessExample(benchmark::State& state) {
  const auto a = compile_text(kExample, kAB).automaton;
  for (auto _ : state) benchmark::DoNotOptimize(emptiness_search(a).status);
}
BENCHMARK(BM_EmptinessExample)->Unit(benchmark::kMillisecond);

void BM_SpanningTransducer(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const auto a = random_automaton(rng, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(SpanningTransducer(a).state_count());
}
BENCHMARK(BM_SpanningTransducer)->Arg(3)->Arg(5)->Arg(7);

}  // namespace

BENCHMARK_MAIN();
