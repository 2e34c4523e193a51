#include <random>

#include "doctest.h"
#include "maxreg/errors.hpp"
#include "maxreg/words.hpp"
#include "oracles.hpp"

using namespace maxreg;

namespace {

const Alphabet kABC = Alphabet::from_chars("abc");

std::string text(const FiniteWord& w) { return format_word(w, kABC); }

FiniteWord word(std::string_view s) { return parse_finite_word(s, kABC); }

}  // namespace

TEST_CASE("prefix") {
  CHECK(text(prefix(make_lasso(word("ab"), word("c")), 5)) == "abccc");
  CHECK(text(prefix(make_ramp(word(""), word("a"), word("b")), 6)) == "abaaba");
  CHECK(prefix(make_lasso(word("ab"), word("c")), 0).empty());
  CHECK(prefix(make_ramp(word(""), word("a"), word("b")), 0).empty());
}

TEST_CASE("prefix is compatible with concatenation") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> len(0, 100), part(0, 3);
  for (int round = 0; round < 100; ++round) {
    FiniteWord u = oracle::random_word(rng, kABC, 0, part(rng));
    FiniteWord v = oracle::random_word(rng, kABC, 0, 1 + part(rng));
    FiniteWord w = oracle::random_word(rng, kABC, 0, part(rng));
    const InfiniteWord x = round % 2 ? InfiniteWord{make_lasso(u, v)} : InfiniteWord{make_ramp(u, v, w)};
    const std::size_t n = len(rng), m = len(rng);
    const auto whole = prefix(x, n + m);
    const auto head = prefix(x, n);
    REQUIRE(whole.size() == n + m);
    CHECK(std::equal(head.letters.begin(), head.letters.end(), whole.letters.begin()));
  }
}

TEST_CASE("annotate") {
  const auto alpha = make_lasso(word(""), word("a"));
  const auto marked = std::get<LassoWord>(annotate(InfiniteWord{alpha}, {0}));
  const auto p = prefix(InfiniteWord{marked}, 3);
  CHECK(p.tracks == 1);
  CHECK(p.letters[0] == Letter{0, 1});
  CHECK(p.letters[1] == Letter{0, 0});
  CHECK(p.letters[2] == Letter{0, 0});

  const auto plain = annotate(word("ab"), {});
  CHECK(plain.tracks == 1);
  for (Letter l : plain.letters) CHECK(l.bits == 0);

  const auto folded = std::get<LassoWord>(annotate(InfiniteWord{make_lasso(word(""), word("ab"))}, {2, 3}));
  CHECK(format_word(folded.u, kABC) == "a[0]b[0]a[1]b[1]");
  CHECK(format_word(folded.v, kABC) == "a[0]b[0]");
}

TEST_CASE("annotate then project recovers the word") {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 50; ++round) {
    const FiniteWord u = oracle::random_word(rng, kABC, 0, 3);
    const FiniteWord v = oracle::random_word(rng, kABC, 0, 1 + round % 4);
    const FiniteWord w = oracle::random_word(rng, kABC, 0, round % 3);
    const InfiniteWord x = round % 2 ? InfiniteWord{make_lasso(u, v)} : InfiniteWord{make_ramp(u, v, w)};
    std::set<std::size_t> positions;
    for (int k = 0; k < 4; ++k) positions.insert(static_cast<std::size_t>(rng() % 40));
    const auto y = annotate(x, positions);
    const auto py = prefix(y, 200);
    CHECK(project_last_track(py) == prefix(x, 200));
    for (std::size_t i = 0; i < 200; ++i) CHECK(py.letters[i].bit(0) == positions.contains(i));
  }
}

TEST_CASE("ramp blocks keep coming") {
  const auto r = make_ramp(word("ab"), word("a"), word("cb"));
  for (std::size_t n = 1; n <= 50; ++n) CHECK(ramp_block_index(r, n * n) >= ramp_block_index(r, n));
  CHECK(ramp_block_index(r, 2500) > ramp_block_index(r, 50));
}

TEST_CASE("word specs") {
  const auto ab = Alphabet::from_chars("ab");
  const auto l = std::get<LassoWord>(parse_word_spec("lasso::ab", ab));
  CHECK(l.u.empty());
  CHECK(format_word(l.v, ab) == "ab");
  const auto r = std::get<RampWord>(parse_word_spec("ramp::a:b", ab));
  CHECK(format_word(prefix(InfiniteWord{r}, 9), ab) == "abaabaaab");
  CHECK_THROWS_AS(parse_word_spec("lasso:ab:", ab), InputError);
  CHECK_THROWS_AS(parse_word_spec("lasso::ac", ab), InputError);
  CHECK_THROWS_AS(parse_word_spec("loop::ab", ab), InputError);
  CHECK_THROWS_AS(parse_word_spec("ramp::a", ab), InputError);
  CHECK(format_word_spec(parse_word_spec("ramp:b:a:b", ab), ab) == "ramp:b:a:b");
  const auto tracked = std::get<LassoWord>(parse_word_spec("lasso:a[1]:a[0]b[0]", ab, 1));
  CHECK(tracked.u.letters[0] == Letter{0, 1});
}
