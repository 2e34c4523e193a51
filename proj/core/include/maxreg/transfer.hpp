#pragma once

#include <cstdint>
#include <vector>

#include "maxreg/automaton.hpp"
#include "maxreg/words.hpp"

namespace maxreg {

/// How an op sequence moves the value of one counter into another.
/// Ordered None < Transfer < TransferWithIncrement.
enum class TransferClass : std::uint8_t { None, Transfer, TransferWithIncrement };

const char* to_string(TransferClass t);

/// at(c, d): does the sequence transfer c to d (d ends at least at c's prior value),
/// and does it do so with an increment.
class TransferMatrix {
 public:
  TransferMatrix() = default;
  static TransferMatrix identity(std::size_t counters);
  static TransferMatrix none(std::size_t counters);

  std::size_t counters() const { return n_; }
  TransferClass at(CounterId from, CounterId to) const { return cells_[from * n_ + to]; }
  TransferClass& at(CounterId from, CounterId to) { return cells_[from * n_ + to]; }

  /// Pointwise maximum; returns true if anything changed.
  bool join(const TransferMatrix& other);

  friend bool operator==(const TransferMatrix&, const TransferMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<TransferClass> cells_;
};

/// Throws UnsupportedError on guarded ops.
TransferMatrix transfer_of(const OpList& ops, std::size_t counters);

/// Relational composition, first m1 then m2. Throws InputError on mismatch.
TransferMatrix compose_transfer(const TransferMatrix& m1, const TransferMatrix& m2);

/// Best transfer along any nonempty path between two states.
class TransferReachability {
 public:
  explicit TransferReachability(const MaxAutomaton& a);

  /// kNone-filled matrix if `to` is unreachable from `from` by a nonempty path.
  const TransferMatrix& best(StateId from, StateId to) const { return table_[from * states_ + to]; }
  bool reachable(StateId from, StateId to) const { return reachable_[from * states_ + to]; }

 private:
  std::size_t states_ = 0;
  std::vector<TransferMatrix> table_;
  std::vector<bool> reachable_;
};

TransferReachability transfer_reachability(const MaxAutomaton& a);

/// Positions x_1 < ... < x_n < y of a run (positions are the boundaries
/// 0..|w| between letters), loop counter c and target counter d.
struct DTrace {
  std::vector<std::size_t> loops;
  std::size_t target = 0;
  CounterId loop_counter = 0;
  CounterId target_counter = 0;
};

/// Checks the trace against the transitions taken on `prefix` from the
/// initial state. Throws InputError on empty or out-of-range positions.
bool verify_dtrace(const MaxAutomaton& a, const FiniteWord& prefix, const DTrace& t);

}  // namespace maxreg
