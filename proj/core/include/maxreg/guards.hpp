#pragma once

#include <memory>
#include <vector>

#include "maxreg/automaton.hpp"

namespace maxreg {

/// Guard language: the suffixes accepted by `automaton` started in `start`.
struct Guard {
  std::shared_ptr<const MaxAutomaton> automaton;
  StateId start = 0;
};

/// Host automaton whose op lists may contain GuardedOutput(c, g): output c
/// only if the rest of the word lies in guard g's language.
struct GuardedMaxAutomaton {
  MaxAutomaton host;
  std::vector<Guard> guards;
};

struct GuardOptions {
  std::size_t guard_limit = 64;
  std::size_t state_budget = 1'000'000;
};

/// Thread simulation: every guarded output spawns a thread (guard state,
/// number); threads in the same state merge keeping the larger number. Throws
/// BudgetExceeded over the guard limit, InputError on malformed guards.
MaxAutomaton remove_guards(const GuardedMaxAutomaton& g, const GuardOptions& options = {});

}  // namespace maxreg
