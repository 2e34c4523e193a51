#pragma once

#include "maxreg/automaton.hpp"

namespace maxreg {

struct ReduceOptions {
  bool normalize_components = true;
  bool merge_states = true;
  std::size_t component_budget = 4096;  ///< subgraph checks per strongly connected component
};

/// Drops unreachable states and counters that neither occur in the
/// acceptance condition nor flow (through max) into a counter that does.
MaxAutomaton trim(const MaxAutomaton& a);

/// Settles every strongly connected component in which acceptance no longer
/// depends on the path taken: such components get a single fresh marker
/// counter. Ops on transitions between components are dropped (a run
/// crosses them finitely often). Automata with guarded ops are returned unchanged.
MaxAutomaton normalize_components(const MaxAutomaton& a, std::size_t budget = 4096);

/// Identifies counters whose values and output sequences coincide on every
/// run and points acceptance atoms at one representative per class.
MaxAutomaton merge_counters(const MaxAutomaton& a);

/// Merges states with identical op lists and successor classes on every letter.
MaxAutomaton merge_states(const MaxAutomaton& a);

/// trim, merge_counters, normalize_components and merge_states.
MaxAutomaton reduce(const MaxAutomaton& a, const ReduceOptions& options = {});

}  // namespace maxreg
