#pragma once

#include <cstddef>

#include "maxreg/automaton.hpp"

namespace maxreg {

/// Synchronous product over the reachable part of Q1 × Q2. Counters are the
/// disjoint union (second operand's names are suffixed on collision), ops are
/// concatenated, acceptance is `op` applied to both conditions. Throws
/// InputError on alphabet or track mismatch and BudgetExceeded when the
/// reachable product exceeds `state_budget`.
MaxAutomaton product(const MaxAutomaton& a1, const MaxAutomaton& a2, Connective op,
                     std::size_t state_budget = 1'000'000);

/// Same structure with negated acceptance.
MaxAutomaton complement(const MaxAutomaton& a);

/// Cylindrification: every transition is duplicated over a fresh last track.
MaxAutomaton add_track(const MaxAutomaton& a);

/// Instantiates track `track` with the empty set and removes it.
MaxAutomaton fix_track_zero(const MaxAutomaton& a, unsigned track);

/// Output normal form: each Output(c) becomes c' := c followed by Output(c'),
/// where the shadow c' is never incremented; acceptance atoms move to shadows.
MaxAutomaton desugar_outputs(const MaxAutomaton& a);

}  // namespace maxreg
