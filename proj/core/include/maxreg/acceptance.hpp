#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace maxreg {

using CounterId = std::uint32_t;

/// Boolean formula over atoms "the output sequence of counter c is bounded".
///
/// Values are immutable and share structure. Every node carries a canonical
/// key, so structural equality and duplicate detection are string compares.
class Acceptance {
 public:
  struct Node;  // opaque
  enum class Kind : std::uint8_t { True, False, Bounded, Not, And, Or };

  Acceptance();  // constant true

  static Acceptance constant(bool value);
  static Acceptance bounded(CounterId c);
  static Acceptance unbounded(CounterId c) { return negate(bounded(c)); }
  static Acceptance negate(const Acceptance& f);
  static Acceptance conj(std::vector<Acceptance> parts);
  static Acceptance disj(std::vector<Acceptance> parts);
  static Acceptance conj(const Acceptance& a, const Acceptance& b) { return conj(std::vector{a, b}); }
  static Acceptance disj(const Acceptance& a, const Acceptance& b) { return disj(std::vector{a, b}); }

  Kind kind() const;
  CounterId counter() const;  // Bounded atoms only
  std::span<const Acceptance> children() const;
  const std::string& key() const;

  /// Constant folding, flattening, double negation, duplicate and
  /// complementary-literal detection. Children are put in canonical order.
  Acceptance simplified() const;

  /// Some(v) if the formula is syntactically the constant v.
  std::optional<bool> as_constant() const;

  /// Throws InputError when an atom has no assignment.
  bool eval(const std::map<CounterId, bool>& bounded) const;
  bool eval(const std::function<bool(CounterId)>& bounded) const;

  /// Replaces atoms for which `value` returns a truth value; result is simplified.
  Acceptance substitute(const std::function<std::optional<bool>(CounterId)>& value) const;

  /// Replaces each atom Bounded(c) by `replacement(c)`; result is simplified.
  Acceptance map_atoms(const std::function<Acceptance(CounterId)>& replacement) const;

  Acceptance renamed(const std::function<CounterId(CounterId)>& rename) const;

  std::set<CounterId> counters() const;

  /// Decides whether the formula is constant by truth-table enumeration when
  /// it has at most `max_atoms` atoms. nullopt if not constant or too large.
  std::optional<bool> semantic_constant(std::size_t max_atoms = 14) const;

  std::size_t size() const;

  /// Surface syntax: `B(name)`, `!`, `&`, `|`, parentheses, `true`, `false`.
  std::string to_string(const std::vector<std::string>& counter_names) const;
  static Acceptance parse(std::string_view text,
                          const std::function<std::optional<CounterId>(std::string_view)>& lookup);

  friend bool operator==(const Acceptance& a, const Acceptance& b) { return a.key() == b.key(); }

 private:
  explicit Acceptance(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// Binary connectives used by product.
enum class Connective : std::uint8_t { And, Or, Implies, Iff };

Acceptance combine(Connective op, const Acceptance& a, const Acceptance& b);

}  // namespace maxreg
