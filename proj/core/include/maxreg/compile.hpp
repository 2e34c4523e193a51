#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "maxreg/automaton.hpp"
#include "maxreg/formula.hpp"
#include "maxreg/reduce.hpp"

namespace maxreg {

struct CompileOptions {
  std::size_t state_budget = 1'000'000;  ///< per product / quantifier construction
  std::size_t guard_limit = 64;
  bool reduce = true;                     ///< run reduce() after every inductive step
  ReduceOptions reduce_options;
};

/// One line per inductive step.
struct CompileStep {
  std::string constructor;
  std::size_t states = 0;
  std::size_t counters = 0;
};

struct CompileResult {
  MaxAutomaton automaton;
  std::vector<std::string> free_vars;  ///< track order
  std::vector<CompileStep> trace;
};

/// Compiles a core formula to a max-automaton over Σ × {0,1}^|free_vars|.
/// Tracks follow `tracks` when given (it must list every free variable),
/// otherwise free_vars order. Throws InputError on a non-core formula and
/// BudgetExceeded when a construction exceeds the state budget.
CompileResult compile(const FormulaPtr& core, const Alphabet& alphabet, const CompileOptions& options = {},
                      std::vector<std::string> tracks = {});

/// parse, desugar, compile. Free set variables of the text come first in
/// `free_sets` order.
CompileResult compile_text(std::string_view text, const Alphabet& alphabet, const std::vector<std::string>& free_sets = {},
                           const CompileOptions& options = {});

std::string format_trace(const std::vector<CompileStep>& trace);

}  // namespace maxreg
