#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxreg/automaton.hpp"
#include "maxreg/words.hpp"

namespace maxreg {

/// Nondeterministic one-counter automaton without max, reading the letters
/// of a host max-automaton. Accepts when its outputs are unbounded.
struct UAutomaton {
  struct Edge {
    std::size_t letter = 0;
    StateId target = 0;
    OpList ops;  ///< on counter 0 only: inc, out, reset
  };

  Alphabet alphabet;
  unsigned tracks = 0;
  std::vector<std::string> state_names;
  std::vector<std::vector<Edge>> edges;
  StateId initial = 0;

  std::size_t state_count() const { return state_names.size(); }
  std::size_t letters() const { return letter_count(alphabet, tracks); }
};

/// Guesses d-traces of `a`: picks a loop counter c, increments at each loop
/// position, outputs the count where the traced value reaches an output of
/// d, then starts over. Unbounded outputs iff arbitrarily long d-traces.
UAutomaton unboundedness_uautomaton(const MaxAutomaton& a, CounterId d);

/// Witness u · α^1 β · α^2 β · ... for a nonempty U-automaton.
struct UWitness {
  RampWord word;
  StateId loop_state = 0;
};

/// nullopt when empty. Nonempty iff a reachable state carries an
/// incrementing loop without resets and lies on a cycle through an output.
std::optional<UWitness> uauto_nonempty(const UAutomaton& u);

/// Maximum output of the U-automaton over all runs on a finite word
/// (max over runs of the max output value); nullopt if no output happens.
std::optional<std::size_t> uauto_max_output(const UAutomaton& u, const FiniteWord& w);

}  // namespace maxreg
