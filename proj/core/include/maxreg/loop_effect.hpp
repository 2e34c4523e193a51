#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "maxreg/automaton.hpp"

namespace maxreg {

/// Max-plus weight: kNoFlow is ⊥ ("no flow"), kInfinite marks an unbounded
/// over-approximation. Ordinary weights are non-negative.
using Weight = std::int64_t;
inline constexpr Weight kNoFlow = -1;
inline constexpr Weight kInfinite = std::numeric_limits<Weight>::max();

Weight weight_add(Weight a, Weight b);

/// An output emitted while executing an op sequence: its value is
/// max(constant, max_d(entry[d] + weights[d])).
struct OutputEvent {
  CounterId counter = 0;
  std::vector<Weight> weights;
  Weight constant = kNoFlow;

  friend bool operator==(const OutputEvent&, const OutputEvent&) = default;
};

/// Affine max-plus summary of an op sequence over n counters: after
/// execution, c = max(constant[c], max_d(entry[d] + weight(c <- d))).
class LoopEffect {
 public:
  LoopEffect() = default;
  static LoopEffect identity(std::size_t counters);

  std::size_t counters() const { return n_; }
  Weight weight(CounterId target, CounterId source) const { return weights_[target * n_ + source]; }
  Weight& weight(CounterId target, CounterId source) { return weights_[target * n_ + source]; }
  Weight constant(CounterId c) const { return constants_[c]; }
  Weight& constant(CounterId c) { return constants_[c]; }
  const std::vector<OutputEvent>& outputs() const { return outputs_; }
  std::vector<OutputEvent>& outputs() { return outputs_; }

  friend bool operator==(const LoopEffect&, const LoopEffect&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Weight> weights_;
  std::vector<Weight> constants_;
  std::vector<OutputEvent> outputs_;
};

/// Abstract interpretation of an op list. Throws UnsupportedError on guarded ops.
LoopEffect effect_of(const OpList& ops, std::size_t counters);

/// Appends the effect of `ops` to `e`; equals compose(e, effect_of(ops)).
void extend(LoopEffect& e, const OpList& ops);

/// Effect of running `first` and then `second`. Throws InputError on counter mismatch.
LoopEffect compose(const LoopEffect& first, const LoopEffect& second);

struct EffectResult {
  std::vector<Natural> valuation;
  std::vector<std::pair<CounterId, Natural>> outputs;
};

/// Evaluates an effect (without kInfinite entries) on a concrete valuation.
EffectResult apply(const LoopEffect& e, const std::vector<Natural>& valuation);

enum class Growth : std::uint8_t { Bounded, Unbounded };

/// Growth of each counter when `e` is iterated forever from a finite
/// valuation: Unbounded iff a positive-weight cycle (or a kInfinite entry)
/// reaches the counter along finite flows.
std::vector<Growth> iterate_classify(const LoopEffect& e);

/// sup over i >= 1 of e^i, with kInfinite where positive cycles make the
/// supremum infinite. Output events are bounded by their worst iteration.
LoopEffect iterate_closure(const LoopEffect& e);

}  // namespace maxreg
