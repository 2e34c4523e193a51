#include <random>

#include "doctest.h"
#include "maxreg/boolean_ops.hpp"
#include "maxreg/corpus.hpp"
#include "maxreg/emptiness.hpp"
#include "maxreg/errors.hpp"
#include "maxreg/muller.hpp"
#include "maxreg/reduce.hpp"
#include "maxreg/uautomaton.hpp"
#include "oracles.hpp"

using namespace maxreg;

namespace {

const Alphabet kAB = Alphabet::from_chars("ab");

MaxAutomaton inf_many_b() {
  MullerAutomaton m = MullerAutomaton::make(kAB, 0, 2);
  for (StateId q = 0; q < 2; ++q) {
    m.set(q, Letter{0, 0}, 0);
    m.set(q, Letter{1, 0}, 1);
  }
  m.family = {{1}, {0, 1}};
  return from_muller(m);
}

// a single state with the given ops on a and b, counter c
MaxAutomaton one_state(OpList on_a, OpList on_b, Acceptance acc) {
  MaxAutomaton a(kAB, 0);
  const auto s = a.add_state("s");
  a.add_counter("c");
  a.set_transition(s, Letter{0, 0}, Transition{s, std::move(on_a)});
  a.set_transition(s, Letter{1, 0}, Transition{s, std::move(on_b)});
  a.set_acceptance(std::move(acc));
  return a;
}

}  // namespace

TEST_CASE("unboundedness automaton") {
  const auto g = oracle::gap();
  const auto u = unboundedness_uautomaton(g, 0);
  for (const auto& edges : u.edges)
    for (const auto& e : edges)
      for (const auto& op : e.ops) CHECK(op.kind != OpKind::MaxInto);
  const auto w = uauto_nonempty(u);
  REQUIRE(w);

  const auto resetting = one_state({CounterOp::reset(0), CounterOp::inc(0), CounterOp::reset(0)},
                                   {CounterOp::out(0), CounterOp::reset(0)}, Acceptance::unbounded(0));
  CHECK_FALSE(uauto_nonempty(unboundedness_uautomaton(resetting, 0)));

  // on (ab)^n the longest trace between resets has one loop step
  const auto abab = parse_finite_word("abababab", kAB);
  const auto longest = uauto_max_output(u, abab);
  REQUIRE(longest);
  CHECK(*longest == 1);
  CHECK(uauto_max_output(u, parse_finite_word("aaaab", kAB)) == 3);
}

TEST_CASE("U-automaton outputs bound the real outputs from below") {
  std::mt19937_64 rng(47);
  for (int round = 0; round < 200; ++round) {
    const auto a = oracle::random_automaton(rng, {3, 2, 3, true, 0}, kAB);
    const auto w = oracle::random_word(rng, kAB, 0, 10);
    const auto cfg = run_finite(a, w.letters);
    for (CounterId d = 0; d < a.counter_count(); ++d) {
      const auto m = uauto_max_output(unboundedness_uautomaton(a, d), w);
      if (!m) continue;
      REQUIRE_FALSE(cfg.outputs[d].empty());
      CHECK(Natural(*m) <= *std::max_element(cfg.outputs[d].begin(), cfg.outputs[d].end()));
    }
  }
}

TEST_CASE("U-automaton emptiness criterion") {
  // no increments: outputs stay 0
  UAutomaton flat{kAB, 0, {"p"}, {{{0, 0, {CounterOp::out(0)}}, {1, 0, {}}}}, 0};
  CHECK_FALSE(uauto_nonempty(flat));

  // the only output is on the way into the loop
  UAutomaton once{kAB, 0, {"p", "q"}, {{{0, 1, {CounterOp::inc(0), CounterOp::out(0)}}}, {{0, 1, {CounterOp::inc(0)}}}}, 0};
  CHECK_FALSE(uauto_nonempty(once));

  UAutomaton pump{kAB, 0, {"p"}, {{{0, 0, {CounterOp::inc(0)}}, {1, 0, {CounterOp::out(0), CounterOp::reset(0)}}}}, 0};
  const auto w = uauto_nonempty(pump);
  REQUIRE(w);
  // the witness unfolded: maxima strictly increase block after block
  std::size_t last = 0;
  for (std::size_t blocks = 1; blocks <= 30; ++blocks) {
    const auto p = prefix(InfiniteWord{w->word}, w->word.u.size() + blocks * (w->word.v.size() * (blocks + 1) / 2 + w->word.w.size()));
    const auto m = uauto_max_output(pump, p);
    REQUIRE(m);
    CHECK(*m >= last);
    last = *m;
  }
  CHECK(last >= 20);
}

TEST_CASE("U-automaton witnesses of random automata grow") {
  std::mt19937_64 rng(41);
  std::size_t witnesses = 0;
  for (int round = 0; round < 200; ++round) {
    const auto a = oracle::random_automaton(rng, {3, 2, 3, true, 0}, kAB);
    for (CounterId d = 0; d < a.counter_count(); ++d) {
      const auto u = unboundedness_uautomaton(a, d);
      const auto w = uauto_nonempty(u);
      if (!w) continue;
      ++witnesses;
      // the max-automaton itself outputs unboundedly on the witness
      const auto maxima = oracle::ramp_block_maxima(a, w->word, 30);
      const std::size_t n = a.counter_count();
      std::uint64_t early = 0, late = 0;
      for (std::size_t j = 0; j < 30; ++j) (j < 15 ? early : late) = std::max(j < 15 ? early : late, maxima[j * n + d]);
      CHECK(late > early);
    }
  }
  CHECK(witnesses > 20);
}

TEST_CASE("emptiness search") {
  const auto g = oracle::gap();
  const auto r = emptiness_search(g);
  REQUIRE(r.status == EmptinessStatus::Nonempty);
  CHECK(format_word_spec(*r.witness, kAB) == "ramp::a:b");
  CHECK(r.certificate == "ramp::a:b c=unbounded");
  CHECK(check_certificate(g, r));

  const auto never = one_state({}, {}, Acceptance::constant(false));
  const auto e = emptiness_search(never);
  CHECK(e.status == EmptinessStatus::Empty);

  const auto b = inf_many_b();
  const auto both = reduce(product(b, complement(b), Connective::And));
  CHECK(emptiness_search(both).status == EmptinessStatus::Empty);

  auto broken = oracle::gap();
  broken.clear_transition(0, Letter{1, 0});
  CHECK_THROWS_AS(emptiness_search(broken), InputError);
}

TEST_CASE("emptiness budget") {
  // needs a long period before anything is accepted: (a^5 b)^ω
  MaxAutomaton a(kAB, 0);
  for (int i = 0; i < 6; ++i) a.add_state("q" + std::to_string(i));
  const auto c = a.add_counter("c");
  for (StateId i = 0; i < 6; ++i) {
    a.set_transition(i, Letter{0, 0}, Transition{i < 5 ? i + 1 : 0, {}});
    a.set_transition(i, Letter{1, 0}, Transition{0, {}});
  }
  a.set_transition(5, Letter{1, 0}, Transition{0, {CounterOp::inc(c), CounterOp::out(c)}});
  a.set_acceptance(Acceptance::unbounded(c));
  EmptinessOptions tiny;
  tiny.budget = 0;
  CHECK(emptiness_search(a, tiny).status == EmptinessStatus::Unknown);
  EmptinessOptions roomy;
  roomy.max_period = 6;
  roomy.budget = 100000;
  const auto r = emptiness_search(a, roomy);
  CHECK(r.status == EmptinessStatus::Nonempty);
  CHECK(check_certificate(a, r));
}

TEST_CASE("emptiness verdicts are sound") {
  std::mt19937_64 rng(43);
  const auto corpus = default_corpus(kAB);
  std::size_t nonempty = 0, empty = 0;
  for (int round = 0; round < 200; ++round) {
    const auto a = oracle::random_automaton(rng, {std::size_t(1 + round % 3), std::size_t(1 + round % 2), 3, true, 0}, kAB);
    EmptinessOptions o;
    o.budget = 500;
    const auto r = emptiness_search(a, o);
    if (r.status == EmptinessStatus::Nonempty) {
      ++nonempty;
      CHECK(check_certificate(a, r));
      const auto* l = std::get_if<LassoWord>(&*r.witness);
      if (l) CHECK(oracle::doubling_lasso(a, *l) == Verdict::Accept);
    } else if (r.status == EmptinessStatus::Empty) {
      ++empty;
      for (const auto& w : corpus) CHECK(membership(a, w).verdict != Verdict::Accept);
    }
  }
  CHECK(nonempty > 50);
}
