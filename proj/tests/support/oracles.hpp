#pragma once

// Reference implementations used by the tests. Nothing here calls the loop
// analysis, the transfer semiring or the quantifier constructions: every
// oracle simulates or enumerates directly.

#include <cstdint>
#include <map>
#include <string>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "maxreg/automaton.hpp"
#include "maxreg/formula.hpp"
#include "maxreg/membership.hpp"
#include "maxreg/muller.hpp"
#include "maxreg/transfer.hpp"
#include "maxreg/words.hpp"

namespace oracle {

using maxreg::Alphabet;
using maxreg::FiniteWord;
using maxreg::MaxAutomaton;

/// One state, counter c; a: inc c; b: out c, reset c; acceptance !B(c).
MaxAutomaton gap();

/// Fresh automaton with random ops (at most `max_ops` per transition) and a
/// random acceptance over its counters.
struct RandomShape {
  std::size_t states = 3;
  std::size_t counters = 2;
  std::size_t max_ops = 3;
  bool with_max = true;
  unsigned tracks = 0;
};
MaxAutomaton random_automaton(std::mt19937_64& rng, const RandomShape& shape, const Alphabet& alphabet);
maxreg::Acceptance random_acceptance(std::mt19937_64& rng, std::size_t counters, int depth);
FiniteWord random_word(std::mt19937_64& rng, const Alphabet& alphabet, unsigned tracks, std::size_t length);

/// Simulates u v^(2N) with 64-bit counters: c is bounded iff the largest
/// output over the 2N periods equals the largest over the first N.
maxreg::Verdict doubling_lasso(const MaxAutomaton& a, const maxreg::LassoWord& w, std::size_t periods = 256);

/// Per-counter boundedness as decided by doubling_lasso.
std::vector<bool> doubling_bounded(const MaxAutomaton& a, const maxreg::LassoWord& w, std::size_t periods = 256);

/// Block j of a ramp is v^(first_block + j) w. Entry [j * counters + c] is
/// 1 + the largest c-output inside block j, 0 if there is none.
std::vector<std::uint64_t> ramp_block_maxima(const MaxAutomaton& a, const maxreg::RampWord& w, std::size_t blocks);

/// Infinity set of the run on the lasso, checked against the family.
bool muller_accepts(const maxreg::MullerAutomaton& m, const maxreg::LassoWord& w);
maxreg::MullerAutomaton random_muller(std::mt19937_64& rng, std::size_t states, const Alphabet& alphabet);

/// Class of the transfer from counter `from` to counter `to` across `ops`,
/// by running the ops with `from` at 1000 and every other counter at 0.
maxreg::TransferClass replay_transfer(const maxreg::OpList& ops, std::size_t counters, maxreg::CounterId from,
                                      maxreg::CounterId to);

/// States of `a` (whose last track is X) reachable on the prefix under some
/// annotation X of the prefix positions; enumerates all 2^n subsets.
std::set<maxreg::StateId> reach_under_some_set(const MaxAutomaton& a, const FiniteWord& prefix);

/// For every state q: the largest |X| over annotations X of the prefix that
/// lead `a` to q, nullopt if none does.
std::vector<std::optional<std::size_t>> max_set_size(const MaxAutomaton& a, const FiniteWord& prefix);

/// Whether `symbol` occurs infinitely often in the word.
bool infinitely_often(const maxreg::InfiniteWord& w, maxreg::Symbol symbol);

/// Whether the word has arbitrarily long blocks of the letter a (index 0):
/// the repeated part v of a lasso or ramp is made of a's only.
bool unbounded_a_blocks(const maxreg::InfiniteWord& w);

/// Truth of a formula (surface or core) on a finite word: quantifiers range
/// over positions, or subsets of positions, of the word. `sets` binds free
/// variables to position masks (first-order ones to singletons).
bool eval_finite(const maxreg::Formula& f, const FiniteWord& w, const Alphabet& alphabet,
                 std::map<std::string, std::uint32_t> sets = {});

/// Random surface formula with at most `quantifiers` first-order quantifiers,
/// free set variables `free_sets`, atoms over letters a and b.
maxreg::FormulaPtr random_formula(std::mt19937_64& rng, std::size_t quantifiers,
                                  const std::vector<std::string>& free_sets);

}  // namespace oracle
