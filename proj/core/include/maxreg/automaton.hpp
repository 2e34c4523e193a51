#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "maxreg/acceptance.hpp"
#include "maxreg/letter.hpp"
#include "maxreg/natural.hpp"

namespace maxreg {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

enum class OpKind : std::uint8_t { Increment, Reset, Output, MaxInto, GuardedOutput };

/// One counter operation. `arg` is the source counter of MaxInto (c := max(c, arg))
/// and the guard id of GuardedOutput.
struct CounterOp {
  OpKind kind = OpKind::Increment;
  CounterId counter = 0;
  std::uint32_t arg = 0;

  static CounterOp inc(CounterId c) { return {OpKind::Increment, c, 0}; }
  static CounterOp reset(CounterId c) { return {OpKind::Reset, c, 0}; }
  static CounterOp out(CounterId c) { return {OpKind::Output, c, 0}; }
  static CounterOp max(CounterId c, CounterId d) { return {OpKind::MaxInto, c, d}; }
  static CounterOp guarded_out(CounterId c, std::uint32_t guard) { return {OpKind::GuardedOutput, c, guard}; }

  friend bool operator==(const CounterOp&, const CounterOp&) = default;
  friend auto operator<=>(const CounterOp&, const CounterOp&) = default;
};

using OpList = std::vector<CounterOp>;

struct Transition {
  StateId target = kNoState;
  OpList ops;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Deterministic max-automaton over Σ × {0,1}^tracks.
///
/// The transition table is dense: one entry per (state, letter). Entries with
/// target kNoState are undefined; validate() reports them. Automata built by
/// the library are always complete.
class MaxAutomaton {
 public:
  MaxAutomaton() = default;
  MaxAutomaton(Alphabet alphabet, unsigned tracks);

  StateId add_state(std::string name);
  CounterId add_counter(std::string name);
  void set_initial(StateId s) { initial_ = s; }
  void set_transition(StateId s, Letter l, Transition t);
  void set_transition(StateId s, std::size_t letter, Transition t);
  void clear_transition(StateId s, Letter l);
  void set_acceptance(Acceptance f) { acceptance_ = std::move(f); }

  const Alphabet& alphabet() const { return alphabet_; }
  unsigned tracks() const { return tracks_; }
  std::size_t letters() const { return letter_count(alphabet_, tracks_); }
  std::size_t state_count() const { return state_names_.size(); }
  std::size_t counter_count() const { return counter_names_.size(); }
  StateId initial() const { return initial_; }
  const std::string& state_name(StateId s) const { return state_names_.at(s); }
  const std::vector<std::string>& state_names() const { return state_names_; }
  const std::string& counter_name(CounterId c) const { return counter_names_.at(c); }
  const std::vector<std::string>& counter_names() const { return counter_names_; }
  std::optional<CounterId> find_counter(std::string_view name) const;
  std::optional<StateId> find_state(std::string_view name) const;
  const Acceptance& acceptance() const { return acceptance_; }

  const Transition& transition(StateId s, Letter l) const { return delta_[index(s, letter_index(l, tracks_))]; }
  const Transition& transition(StateId s, std::size_t letter) const { return delta_[index(s, letter)]; }
  StateId next(StateId s, Letter l) const { return transition(s, l).target; }

  bool has_guarded_ops() const;

 private:
  std::size_t index(StateId s, std::size_t letter) const { return static_cast<std::size_t>(s) * letters() + letter; }

  Alphabet alphabet_;
  unsigned tracks_ = 0;
  std::vector<std::string> state_names_;
  std::vector<std::string> counter_names_;
  StateId initial_ = 0;
  std::vector<Transition> delta_;
  Acceptance acceptance_;
};

/// Validation findings; empty iff the automaton is well-formed.
struct ValidationReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

/// Reports missing delta entries, dangling state/counter references, bad
/// initial state, and guarded ops (which a plain automaton may not use).
ValidationReport validate(const MaxAutomaton& a);

/// Run-time configuration: current state, counter valuation, and the log of
/// output values per counter.
struct Configuration {
  StateId state = 0;
  std::vector<Natural> valuation;
  std::vector<std::vector<Natural>> outputs;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

Configuration initial_configuration(const MaxAutomaton& a);

/// Applies an op list left to right to a valuation. Output values are
/// appended to `outputs` as (counter, value) in emission order. Guarded ops
/// are rejected with UnsupportedError.
void apply_ops(const OpList& ops, std::vector<Natural>& valuation,
               std::vector<std::pair<CounterId, Natural>>* outputs);

/// One step. Throws InputError if the letter is outside Σ × {0,1}^tracks.
Configuration step(const MaxAutomaton& a, const Configuration& cfg, Letter l);

/// Folds step from the initial configuration (all counters 0).
Configuration run_finite(const MaxAutomaton& a, const std::vector<Letter>& word);

/// State sequence s_0 s_1 ... s_n of the run on a finite word.
std::vector<StateId> run_states(const MaxAutomaton& a, const std::vector<Letter>& word);

std::string format_op(const CounterOp& op, const std::vector<std::string>& counter_names);

}  // namespace maxreg
