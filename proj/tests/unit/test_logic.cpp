#include <random>

#include "doctest.h"
#include "maxreg/errors.hpp"
#include "maxreg/formula.hpp"
#include "oracles.hpp"

using namespace maxreg;

namespace {

bool mentions_first_order(const Formula& f) {
  using K = FormulaKind;
  if (f.kind == K::In || f.kind == K::Le || f.kind == K::Letter || f.kind == K::Exists || f.kind == K::Forall ||
      f.kind == K::Implies)
    return true;
  for (const auto& c : f.children)
    if (mentions_first_order(*c)) return true;
  return false;
}

}  // namespace

TEST_CASE("parse") {
  const auto f = parse_formula("exf X. sing(X)");
  CHECK(f->kind == FormulaKind::ExistsFin);
  CHECK(f->children[0]->kind == FormulaKind::Sing);
  CHECK(well_formed(f).ok());
  CHECK(is_core(f));

  const auto g = parse_formula("all x. a(x) -> ex y. x <= y & b(y)");
  CHECK(g->kind == FormulaKind::Forall);
  CHECK(g->children[0]->kind == FormulaKind::Implies);
  CHECK(quantifier_count(g) == 2);
  CHECK_FALSE(is_core(g));

  const auto h = parse_formula("U X. sub(X,Y)", {"Y"});
  CHECK(free_vars(h) == std::vector<std::string>{"Y"});
}

TEST_CASE("parse errors carry the offset") {
  try {
    parse_formula("x in X");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 0);
    CHECK(std::string(e.what()).find("unbound variable x") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_formula("ex x. a(x"), ParseError);
  CHECK_THROWS_AS(parse_formula("ex X. a(X)"), ParseError);
  CHECK_THROWS_AS(parse_formula("exf x. sing(x)"), ParseError);
  CHECK_THROWS_AS(parse_formula("ex x. a(x) $"), ParseError);
  CHECK_THROWS_AS(parse_formula("ex x. sub(x)"), ParseError);
}

TEST_CASE("binders are renamed apart") {
  const auto f = parse_formula("(ex x. a(x)) & (ex x. b(x))");
  CHECK(f->children[0]->vars[0] != f->children[1]->vars[0]);
  CHECK(well_formed(f).ok());
}

TEST_CASE("desugar") {
  const auto f = desugar(parse_formula("ex x. b(x)"));
  REQUIRE(f->kind == FormulaKind::ExistsFin);
  const std::string x = f->vars[0];
  const auto& body = f->children[0];
  REQUIRE(body->kind == FormulaKind::And);
  CHECK(body->children[0]->kind == FormulaKind::Sing);
  CHECK(body->children[0]->vars[0] == x);
  CHECK(body->children[1]->kind == FormulaKind::LetterAll);
  CHECK(body->children[1]->symbol == "b");
  CHECK(is_core(f));
  CHECK(well_formed(f, true).ok());

  const auto all = desugar(parse_formula("all x. a(x)"));
  CHECK(all->kind == FormulaKind::Not);
  CHECK(all->children[0]->kind == FormulaKind::ExistsFin);

  // a set name that collides with the generated one
  const auto clash = desugar(parse_formula("ex x. x in Xx", {"Xx"}));
  CHECK(clash->vars[0] != "Xx");
  CHECK(well_formed(clash, true).ok());
}

TEST_CASE("free_vars") {
  CHECK(free_vars(parse_formula("ex x. x in Y & x in X", {"X", "Y"})) == std::vector<std::string>{"Y", "X"});
  CHECK(free_vars(parse_formula("exf X. sing(X)")).empty());
}

TEST_CASE("print then parse is the identity") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 50; ++round) {
    const auto f = oracle::random_formula(rng, 1 + round % 3, {"X", "Y"});
    const std::string text = to_string(f);
    const auto g = parse_formula(text, {"X", "Y"});
    CHECK_MESSAGE(to_string(g) == text, text);
    const auto core = desugar(g);
    const std::string core_text = to_string(core);
    CHECK(to_string(parse_formula(core_text, free_vars(core))) == core_text);
  }
}

TEST_CASE("desugar leaves only core constructs") {
  std::mt19937_64 rng(32);
  for (int round = 0; round < 100; ++round) {
    const auto core = desugar(oracle::random_formula(rng, 1 + round % 3, {"X"}));
    CHECK_FALSE(mentions_first_order(*core));
    CHECK(is_core(core));
    CHECK(well_formed(core, true).ok());
  }
}

TEST_CASE("desugar preserves truth on finite words") {
  std::mt19937_64 rng(33);
  const Alphabet ab({"a", "b"});
  std::uniform_int_distribution<std::size_t> len(0, 7);
  std::uniform_int_distribution<std::uint32_t> bits(0, 255);
  int compared = 0;
  for (int round = 0; round < 200; ++round) {
    const auto f = oracle::random_formula(rng, 1 + round % 2, {"X", "Y"});
    const auto core = desugar(f);
    const auto w = oracle::random_word(rng, ab, 0, len(rng));
    const std::uint32_t keep = (1u << w.size()) - 1;
    const std::map<std::string, std::uint32_t> sets{{"X", bits(rng) & keep}, {"Y", bits(rng) & keep}};
    CHECK_MESSAGE(oracle::eval_finite(*f, w, ab, sets) == oracle::eval_finite(*core, w, ab, sets), to_string(f));
    ++compared;
  }
  CHECK(compared == 200);
}
