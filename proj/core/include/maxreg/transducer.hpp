#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "maxreg/automaton.hpp"

namespace maxreg {

/// Deterministic, complete letter-to-letter transducer from Σ × {0,1}^tracks
/// into an output alphabet of `output_letters` indexed letters.
struct Transducer {
  Alphabet alphabet;
  unsigned tracks = 0;
  std::size_t states = 0;
  StateId initial = 0;
  std::size_t output_letters = 0;
  std::vector<StateId> next;         ///< [state * letters + letter]
  std::vector<std::size_t> output;   ///< [state * letters + letter]

  std::size_t letters() const { return letter_count(alphabet, tracks); }
  static Transducer identity(const Alphabet& alphabet, unsigned tracks);
};

/// Accepts w iff `checker` accepts t(w); checker letters are t's output
/// letters by index. Throws InputError on an alphabet size mismatch.
MaxAutomaton compose_with_transducer(const MaxAutomaton& checker, const Transducer& t,
                                     std::size_t state_budget = 1'000'000);

/// Permutation transducer producing |Q| spanning partial runs of `a`.
/// State k is a permutation of Q; coordinate i is the state of track i.
class SpanningTransducer {
 public:
  explicit SpanningTransducer(const MaxAutomaton& a, std::size_t state_budget = 1'000'000);

  std::size_t tracks() const { return n_; }
  std::size_t state_count() const { return perms_.size() / n_; }
  std::size_t letters() const { return letters_; }
  std::span<const StateId> permutation(std::size_t k) const { return {perms_.data() + k * n_, n_}; }
  std::uint32_t next(std::size_t k, std::size_t letter) const { return next_[k * letters_ + letter]; }
  /// Bit i set: track i continues its run; clear: track i restarts at the new position.
  Bits kept(std::size_t k, std::size_t letter) const { return kept_[k * letters_ + letter]; }

 private:
  std::size_t n_ = 0;
  std::size_t letters_ = 0;
  std::vector<StateId> perms_;
  std::vector<std::uint32_t> next_;
  std::vector<Bits> kept_;
};

/// One transducer step seen by a checker: track states before and after the
/// letter, and the continuation bits.
struct SpanStep {
  std::span<const StateId> before;
  std::span<const StateId> after;
  Bits kept = 0;
};

/// Deterministic max-automaton reading the input letter together with the
/// outputs of a fixed list of spanning transducers. States are opaque keys.
class SpanChecker {
 public:
  using Key = std::vector<std::uint32_t>;
  virtual ~SpanChecker() = default;

  virtual std::vector<std::string> counter_names() const = 0;
  virtual Acceptance acceptance() const = 0;
  virtual Key initial() const = 0;
  /// Appends ops (in this checker's counter numbering) and returns the next key.
  virtual Key step(const Key& key, std::size_t letter, std::span<const SpanStep> steps, OpList& ops) const = 0;
  virtual std::string describe(const Key& key) const;
};

/// Reachable product of the transducers' controls with the checker.
/// Throws BudgetExceeded beyond `state_budget` product states.
MaxAutomaton compose_with_transducers(const SpanChecker& checker, const std::vector<const SpanningTransducer*>& ts,
                                      const Alphabet& alphabet, unsigned tracks, std::size_t state_budget = 1'000'000);

}  // namespace maxreg
