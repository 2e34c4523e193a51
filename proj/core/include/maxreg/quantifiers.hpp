#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "maxreg/automaton.hpp"
#include "maxreg/formula.hpp"
#include "maxreg/guards.hpp"
#include "maxreg/muller.hpp"
#include "maxreg/transducer.hpp"

namespace maxreg {

/// Muller automaton of a core atom over Σ × {0,1}^tracks; `track_of` maps
/// the atom's set variables to track indices. At most 4 states.
MullerAutomaton atom_muller(FormulaKind kind, const std::vector<unsigned>& track_of, std::optional<Symbol> symbol,
                            const Alphabet& alphabet, unsigned tracks);

/// from_muller(atom_muller(...)), or a one-state automaton for true/false.
MaxAutomaton atomic_automaton(const Formula& atom, const Alphabet& alphabet, const std::vector<std::string>& tracks);

/// Reads the outputs of the spanning transducer of fix_track_zero(a, last).
/// For each selected track i: (A) replays a's ops along track i and counts
/// restarts in z_i, (B) tracks R_x, the states a reaches on some finite
/// annotation of the prefix, and marks f_i while track i converged into R_x
/// without restarting since.
class QuantifierChecker : public SpanChecker {
 public:
  QuantifierChecker(const MaxAutomaton& a, std::vector<std::size_t> tracks, bool with_a, bool with_b);

  std::vector<std::string> counter_names() const override { return names_; }
  Acceptance acceptance() const override;
  Key initial() const override;
  Key step(const Key& key, std::size_t letter, std::span<const SpanStep> steps, OpList& ops) const override;

  const MaxAutomaton& zeroed() const { return zeroed_; }
  /// Decoding helpers for keys produced by this checker.
  bool reach(const Key& key, StateId q) const;
  bool flag(const Key& key, std::size_t slot) const;
  CounterId restart_counter(std::size_t slot) const { return z_.at(slot); }
  CounterId flag_counter(std::size_t slot) const { return f_.at(slot); }

 private:
  const MaxAutomaton& a_;
  MaxAutomaton zeroed_;
  std::vector<std::size_t> tracks_;
  bool with_a_, with_b_;
  std::size_t n_, words_;
  std::vector<std::string> names_;
  std::vector<std::vector<CounterId>> copies_;
  std::vector<CounterId> z_, f_;
  std::vector<std::size_t> zero_letter_, one_letter_;  // base letter -> letter of a with X bit 0 / 1
};

/// Condition (A) / (B) for track i, composed with the spanning transducer of
/// fix_track_zero(a, last); the result reads Σ × {0,1}^(tracks-1).
MaxAutomaton condition_A(const MaxAutomaton& a, std::size_t track, std::size_t state_budget = 1'000'000);
MaxAutomaton condition_B(const MaxAutomaton& a, std::size_t track, std::size_t state_budget = 1'000'000);

/// ∃fin X over the last track: union over tracks i of (A_i ∧ B_i).
MaxAutomaton exists_fin(const MaxAutomaton& a, std::size_t state_budget = 1'000'000);

/// max(q, w) counters: after a prefix, counter_of[q] holds the largest |X|
/// with X a set of prefix positions on which a (reading X on its last track)
/// reaches q. Which q are reachable at all is recorded in the state.
struct Maxcount {
  MaxAutomaton automaton;                 ///< over Σ × {0,1}^(tracks-1), acceptance true
  std::vector<CounterId> counter_of;      ///< per state of the input automaton
  std::vector<std::uint64_t> reachable;   ///< per state of `automaton`: bitmask over input states
};

Maxcount maxcount_augment(const MaxAutomaton& a, std::size_t state_budget = 1'000'000);

/// U X over the last track, through a guarded automaton and remove_guards.
MaxAutomaton u_quantifier(const MaxAutomaton& a, const GuardOptions& options);

}  // namespace maxreg
