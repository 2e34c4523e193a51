#include <random>
#include <sstream>

#include "doctest.h"
#include "maxreg/boolean_ops.hpp"
#include "maxreg/compile.hpp"
#include "maxreg/corpus.hpp"
#include "maxreg/errors.hpp"
#include "maxreg/io.hpp"
#include "maxreg/reduce.hpp"
#include "oracles.hpp"

using namespace maxreg;

namespace {

const Alphabet kAB = Alphabet::from_chars("ab");

const std::vector<InfiniteWord>& corpus() {
  static const auto words = default_corpus(kAB);
  return words;
}

Verdict verdict(const MaxAutomaton& a, const InfiniteWord& w) { return membership(a, w).verdict; }

MaxAutomaton compiled(std::string_view text, const std::vector<std::string>& free = {}) {
  return compile_text(text, kAB, free).automaton;
}

/// Lassos must agree; ramps must agree whenever both sides decide.
std::size_t disagreements(const MaxAutomaton& x, const MaxAutomaton& y, const std::vector<InfiniteWord>& words) {
  std::size_t bad = 0;
  for (const auto& w : words) {
    const Verdict vx = verdict(x, w), vy = verdict(y, w);
    if (std::holds_alternative<LassoWord>(w) ? vx != vy : (vx != Verdict::Unknown && vy != Verdict::Unknown && vx != vy))
      ++bad;
  }
  return bad;
}

std::string example_formula() {
  std::istringstream in(load_text(MAXREG_DATA_DIR "/example.formula"));
  std::string text, line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') text += line + "\n";
  return text;
}

}  // namespace

TEST_CASE("compile examples") {
  struct Case {
    const char* formula;
    bool (*expected)(const InfiniteWord&);
  };
  const Case cases[] = {
      {"ex x. b(x)",
       [](const InfiniteWord& w) {
         return oracle::infinitely_often(w, 1) || format_word_spec(w, kAB).find('b') != std::string::npos;
       }},
      {"all x. a(x)", [](const InfiniteWord& w) { return format_word_spec(w, kAB).find('b') == std::string::npos; }},
      {"all x. ex y. x <= y & b(y)", [](const InfiniteWord& w) { return oracle::infinitely_often(w, 1); }},
      {"ex x. all y. x <= y -> a(y)", [](const InfiniteWord& w) { return !oracle::infinitely_often(w, 1); }},
  };
  for (const auto& c : cases) {
    const auto r = compile_text(c.formula, kAB);
    CHECK(r.automaton.tracks() == 0);
    CHECK_FALSE(r.trace.empty());
    for (const auto& w : corpus()) {
      INFO(c.formula, " on ", format_word_spec(w, kAB));
      CHECK(verdict(r.automaton, w) == (c.expected(w) ? Verdict::Accept : Verdict::Reject));
    }
  }
}

TEST_CASE("compile with free set variables") {
  const auto r = compile_text("ex x. x in X & b(x)", kAB, {"X"});
  CHECK(r.free_vars == std::vector<std::string>{"X"});
  CHECK(r.automaton.tracks() == 1);
  const auto in_b = parse_word_spec("lasso:a[1]b[1]:a[0]", kAB, 1);
  const auto in_a = parse_word_spec("lasso:a[1]b[0]:a[0]", kAB, 1);
  CHECK(verdict(r.automaton, in_b) == Verdict::Accept);
  CHECK(verdict(r.automaton, in_a) == Verdict::Reject);
}

TEST_CASE("compile errors") {
  CHECK_THROWS_AS(compile_text("ex x. a(x", kAB), ParseError);
  CHECK_THROWS_AS(compile_text("ex x. c(x)", kAB), InputError);
  CHECK_THROWS_AS(compile(parse_formula("ex x. a(x)"), kAB), InputError);
  CHECK_THROWS_AS(compile(desugar(parse_formula("ex x. x in X", {"X"})), kAB, {}, {"Y"}), InputError);
  CompileOptions tiny;
  tiny.state_budget = 10;
  CHECK_THROWS_AS(compile_text("all x. ex y. (a(x) -> (x <= y & b(y)))", kAB, {}, tiny), BudgetExceeded);
}

TEST_CASE("the trace has one line per step") {
  const auto r = compile_text("ex x. b(x)", kAB);
  // sing, letters, and, exists_fin
  CHECK(r.trace.size() == 4);
  CHECK(r.trace.back().constructor.rfind("exists_fin", 0) == 0);
  CHECK(format_trace(r.trace).find(r.trace.front().constructor) != std::string::npos);
}

TEST_CASE("negation is complementation") {
  for (const char* f : {"ex x. b(x)", "all x. ex y. x <= y & a(y)", "ex x. a(x) & all y. y <= x | b(y)"}) {
    const auto pos = compiled(f);
    const auto neg = compiled(std::string("!(") + f + ")");
    for (const auto& w : corpus()) {
      const Verdict p = verdict(pos, w), n = verdict(neg, w);
      if (p == Verdict::Unknown || n == Verdict::Unknown) continue;
      CHECK(p != n);
    }
    CHECK(disagreements(neg, complement(pos), corpus()) == 0);
  }
}

TEST_CASE("compiled random formulas obey logical laws") {
  std::mt19937_64 rng(61);
  std::size_t tested = 0, over_budget = 0;
  for (int round = 0; round < 60 && tested < 10; ++round) {
    const std::string f = to_string(oracle::random_formula(rng, 2, {}));
    const std::string g = to_string(oracle::random_formula(rng, 1, {"X"}));
    const std::string h = to_string(oracle::random_formula(rng, 1, {"X"}));
    try {
      INFO(f, " / ", g, " / ", h);
      const auto F = compiled(f);
      CHECK(disagreements(compiled("(" + f + ") & (" + f + ")"), F, corpus()) == 0);
      CHECK(disagreements(compiled("(" + f + ") | (" + f + ")"), F, corpus()) == 0);
      const auto G = compiled(g, {"X"});
      const auto H = compiled(h, {"X"});
      const auto words = default_corpus(kAB, 1, {1, 2, 1});
      CHECK(disagreements(compiled("!((" + g + ") & (" + h + "))", {"X"}),
                          compiled("!(" + g + ") | !(" + h + ")", {"X"}), words) == 0);
      CHECK(disagreements(compiled("!(" + g + ")", {"X"}), complement(G), words) == 0);
      CHECK(disagreements(compiled("exf X. (" + g + ") | (" + h + ")"),
                          compiled("(exf X. " + g + ") | (exf X. " + h + ")"), corpus()) == 0);
      CHECK(disagreements(compiled("(" + g + ") & (" + h + ")", {"X"}), product(G, H, Connective::And), words) == 0);
      ++tested;
    } catch (const BudgetExceeded&) {
      ++over_budget;
    }
  }
  CHECK(tested == 10);
}

TEST_CASE("the example formula accepts exactly the words with unbounded a-blocks") {
  const auto r = compile_text(example_formula(), kAB);
  std::size_t unknown = 0;
  for (const auto& w : corpus()) {
    INFO(format_word_spec(w, kAB));
    const Verdict v = verdict(r.automaton, w);
    unknown += v == Verdict::Unknown;
    if (v != Verdict::Unknown) CHECK(v == (oracle::unbounded_a_blocks(w) ? Verdict::Accept : Verdict::Reject));
  }
  CHECK(unknown == 0);
}

TEST_CASE("the example formula and the gap automaton differ only on words with finitely many b") {
  const auto formula = compile_text(example_formula(), kAB).automaton;
  const auto gap = oracle::gap();
  std::size_t finite_b = 0;
  for (const auto& w : corpus()) {
    INFO(format_word_spec(w, kAB));
    if (oracle::infinitely_often(w, 1)) {
      CHECK(verdict(formula, w) == verdict(gap, w));
    } else {
      ++finite_b;
      CHECK(verdict(formula, w) == Verdict::Accept);
      CHECK(verdict(gap, w) == Verdict::Reject);
    }
  }
  CHECK(finite_b == 63);
}

TEST_CASE("reduce") {
  const auto g = oracle::gap();
  const auto t = trim(g);
  CHECK(t.state_count() == 1);
  CHECK(t.counter_count() == 1);
  CHECK(to_json(t) == to_json(g));

  auto extra = g;
  const CounterId d = extra.add_counter("unread");
  Transition ta = extra.transition(0, 0);
  ta.ops.push_back(CounterOp::inc(d));
  extra.set_transition(0, 0, ta);
  CHECK(trim(extra).counter_count() == 1);

  // an unreachable state disappears
  auto dead = g;
  dead.add_state("dead");
  dead.set_transition(1, Letter{0, 0}, Transition{1, {}});
  dead.set_transition(1, Letter{1, 0}, Transition{1, {}});
  CHECK(trim(dead).state_count() == 1);

  // two counters that always hold the same value merge
  auto twin = g;
  const CounterId e = twin.add_counter("twin");
  twin.set_transition(0, Letter{0, 0}, Transition{0, {CounterOp::inc(0), CounterOp::inc(e)}});
  twin.set_transition(0, Letter{1, 0},
                      Transition{0, {CounterOp::out(0), CounterOp::reset(0), CounterOp::out(e), CounterOp::reset(e)}});
  twin.set_acceptance(Acceptance::conj(Acceptance::unbounded(0), Acceptance::unbounded(e)));
  CHECK(reduce(twin).counter_count() == 1);
}

TEST_CASE("reduce preserves the language") {
  std::mt19937_64 rng(62);
  for (int round = 0; round < 60; ++round) {
    const auto a = oracle::random_automaton(rng, {3, 2, 3, true, 0}, kAB);
    const auto r = reduce(a);
    CHECK(r.state_count() <= a.state_count());
    CHECK(disagreements(a, r, corpus()) == 0);
  }
}

TEST_CASE("JSON round trip") {
  std::mt19937_64 rng(63);
  for (int round = 0; round < 50; ++round) {
    const auto a = oracle::random_automaton(rng, {3, 2, 3, true, static_cast<unsigned>(round % 2)}, kAB);
    const std::string text = to_json(a);
    CHECK(to_json(from_json(text)) == text);
  }
  const auto c = compiled(example_formula());
  CHECK(to_json(from_json(to_json(c))) == to_json(c));
  CHECK(to_dot(c).find("digraph") == 0);
  CHECK_THROWS_AS(from_json("{"), InputError);
  CHECK_THROWS_AS(from_json(R"({"alphabet":["a"],"states":["s"],"initial":"t","transitions":{}})"), InputError);
}

TEST_CASE("corpus") {
  CHECK(all_words(kAB, 0, 0, 2).size() == 7);
  CHECK(default_corpus(kAB).size() == 392);
  const auto words = parse_corpus("# comment\n\nlasso::ab\nramp:a:b:a\n", kAB);
  REQUIRE(words.size() == 2);
  CHECK(format_word_spec(words[0], kAB) == "lasso::ab");
  try {
    parse_corpus("lasso::a\nlasso:a:\n", kAB);
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  for (const auto& w : default_corpus(kAB))
    CHECK(format_word_spec(parse_word_spec(format_word_spec(w, kAB), kAB), kAB) == format_word_spec(w, kAB));
}
