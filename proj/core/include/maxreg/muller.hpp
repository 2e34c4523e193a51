#pragma once

#include <set>
#include <vector>

#include "maxreg/automaton.hpp"

namespace maxreg {

/// Finite automaton with Muller acceptance. `delta[state][letter]` lists the
/// successors; from_muller requires exactly one per entry.
struct MullerAutomaton {
  Alphabet alphabet;
  unsigned tracks = 0;
  std::size_t states = 0;
  StateId initial = 0;
  std::vector<std::vector<std::vector<StateId>>> delta;
  std::vector<std::set<StateId>> family;

  /// Deterministic complete automaton with empty family.
  static MullerAutomaton make(Alphabet alphabet, unsigned tracks, std::size_t states);
  void set(StateId from, Letter l, StateId to);
  StateId next(StateId from, Letter l) const;
  bool deterministic() const;
};

/// Boolean condition "the set of counters seen infinitely often is one of the
/// family members", where `counter_of[q]` is unbounded iff q recurs.
Acceptance muller_acceptance(const std::vector<std::set<StateId>>& family, const std::vector<CounterId>& counter_of);

/// One counter c_q per state, incremented and output on entering q, never
/// reset. Throws InputError on a nondeterministic or incomplete input.
MaxAutomaton from_muller(const MullerAutomaton& m);

}  // namespace maxreg
