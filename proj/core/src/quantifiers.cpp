#include "maxreg/quantifiers.hpp"

#include <unordered_map>

#include "maxreg/boolean_ops.hpp"
#include "maxreg/errors.hpp"

namespace maxreg {

namespace {

void require_track(const MaxAutomaton& a) {
  if (a.tracks() == 0) throw InputError("quantifier needs an automaton with at least one track");
  if (a.has_guarded_ops()) throw UnsupportedError("quantifier over a guarded automaton");
}

/// a's letter for base letter l with the last track set to `bit`.
std::size_t with_last_bit(const MaxAutomaton& a, std::size_t l, bool bit) {
  Letter base = letter_at(l, a.tracks() - 1);
  if (bit) base.bits |= Bits{1} << (a.tracks() - 1);
  return letter_index(base, a.tracks());
}

OpList rename_ops(const OpList& ops, const std::vector<CounterId>& map) {
  OpList out;
  out.reserve(ops.size());
  for (auto op : ops) {
    op.counter = map[op.counter];
    if (op.kind == OpKind::MaxInto) op.arg = map[op.arg];
    out.push_back(op);
  }
  return out;
}

}  // namespace

QuantifierChecker::QuantifierChecker(const MaxAutomaton& a, std::vector<std::size_t> tracks, bool with_a, bool with_b)
    : a_(a), tracks_(std::move(tracks)), with_a_(with_a), with_b_(with_b), n_(a.state_count()) {
  require_track(a);
  if (n_ > 64) throw BudgetExceeded("quantified automaton has more than 64 states");
  zeroed_ = fix_track_zero(a, a.tracks() - 1);
  words_ = (n_ + 31) / 32;
  for (std::size_t slot = 0; slot < tracks_.size(); ++slot) {
    const std::size_t i = tracks_[slot];
    if (i >= n_) throw InputError("track index out of range");
    std::vector<CounterId> copy;
    if (with_a_) {
      for (CounterId c = 0; c < a.counter_count(); ++c) {
        copy.push_back(static_cast<CounterId>(names_.size()));
        names_.push_back(a.counter_name(c) + "@" + std::to_string(i));
      }
      z_.push_back(static_cast<CounterId>(names_.size()));
      names_.push_back("z@" + std::to_string(i));
    }
    copies_.push_back(std::move(copy));
    if (with_b_) {
      f_.push_back(static_cast<CounterId>(names_.size()));
      names_.push_back("f@" + std::to_string(i));
    }
  }
  const std::size_t base = zeroed_.letters();
  for (std::size_t l = 0; l < base; ++l) {
    zero_letter_.push_back(with_last_bit(a, l, false));
    one_letter_.push_back(with_last_bit(a, l, true));
  }
}

Acceptance QuantifierChecker::acceptance() const {
  std::vector<Acceptance> parts;
  for (std::size_t slot = 0; slot < tracks_.size(); ++slot) {
    std::vector<Acceptance> conj;
    if (with_a_) {
      const auto& copy = copies_[slot];
      conj.push_back(a_.acceptance().renamed([&](CounterId c) { return copy[c]; }));
      conj.push_back(Acceptance::bounded(z_[slot]));
    }
    if (with_b_) conj.push_back(Acceptance::unbounded(f_[slot]));
    parts.push_back(Acceptance::conj(std::move(conj)));
  }
  return Acceptance::disj(std::move(parts)).simplified();
}

bool QuantifierChecker::reach(const Key& key, StateId q) const { return (key[q / 32] >> (q % 32)) & 1u; }

bool QuantifierChecker::flag(const Key& key, std::size_t slot) const {
  return (key[words_ + slot / 32] >> (slot % 32)) & 1u;
}

SpanChecker::Key QuantifierChecker::initial() const {
  if (!with_b_) return {};
  Key key(words_ + (tracks_.size() + 31) / 32, 0);
  const StateId init = a_.initial();
  key[init / 32] |= 1u << (init % 32);
  for (std::size_t slot = 0; slot < tracks_.size(); ++slot)
    if (tracks_[slot] == init) key[words_ + slot / 32] |= 1u << (slot % 32);
  return key;
}

SpanChecker::Key QuantifierChecker::step(const Key& key, std::size_t letter, std::span<const SpanStep> steps,
                                         OpList& ops) const {
  const SpanStep& s = steps[0];
  Key next;
  if (with_b_) {
    next.assign(key.size(), 0);
    for (StateId q = 0; q < n_; ++q) {
      if (!reach(key, q)) continue;
      for (std::size_t l : {zero_letter_[letter], one_letter_[letter]}) {
        const StateId t = a_.transition(q, l).target;
        next[t / 32] |= 1u << (t % 32);
      }
    }
  }
  for (std::size_t slot = 0; slot < tracks_.size(); ++slot) {
    const std::size_t i = tracks_[slot];
    const bool kept = (s.kept >> i) & 1u;
    if (with_a_) {
      if (kept) {
        const OpList renamed = rename_ops(zeroed_.transition(s.before[i], letter).ops, copies_[slot]);
        ops.insert(ops.end(), renamed.begin(), renamed.end());
      } else {
        ops.push_back(CounterOp::inc(z_[slot]));
        ops.push_back(CounterOp::out(z_[slot]));
      }
    }
    if (with_b_) {
      const bool converged = reach(next, s.after[i]) || (flag(key, slot) && kept);
      if (converged) {
        next[words_ + slot / 32] |= 1u << (slot % 32);
        ops.push_back(CounterOp::inc(f_[slot]));
        ops.push_back(CounterOp::out(f_[slot]));
      }
    }
  }
  return next;
}

namespace {

MaxAutomaton run_checker(const MaxAutomaton& a, std::vector<std::size_t> tracks, bool with_a, bool with_b,
                         std::size_t budget) {
  QuantifierChecker checker(a, std::move(tracks), with_a, with_b);
  SpanningTransducer t(checker.zeroed(), budget);
  return compose_with_transducers(checker, {&t}, a.alphabet(), a.tracks() - 1, budget);
}

}  // namespace

MaxAutomaton condition_A(const MaxAutomaton& a, std::size_t track, std::size_t state_budget) {
  return run_checker(a, {track}, true, false, state_budget);
}

MaxAutomaton condition_B(const MaxAutomaton& a, std::size_t track, std::size_t state_budget) {
  return run_checker(a, {track}, false, true, state_budget);
}

MaxAutomaton exists_fin(const MaxAutomaton& a, std::size_t state_budget) {
  require_track(a);
  std::vector<std::size_t> all(a.state_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return run_checker(a, std::move(all), true, true, state_budget);
}

Maxcount maxcount_augment(const MaxAutomaton& a, std::size_t state_budget) {
  require_track(a);
  const std::size_t n = a.state_count();
  if (n > 64) throw BudgetExceeded("maxcount needs at most 64 states");
  const unsigned tracks = a.tracks() - 1;
  Maxcount m{MaxAutomaton(a.alphabet(), tracks), {}, {}};
  MaxAutomaton& out = m.automaton;
  std::vector<CounterId> shadow;
  for (StateId q = 0; q < n; ++q) m.counter_of.push_back(out.add_counter("max_" + a.state_name(q)));
  for (StateId q = 0; q < n; ++q) shadow.push_back(out.add_counter("max'_" + a.state_name(q)));
  const CounterId bump = out.add_counter("bump");

  std::unordered_map<std::uint64_t, StateId> ids;
  auto id_of = [&](std::uint64_t mask) {
    auto [it, fresh] = ids.emplace(mask, static_cast<StateId>(m.reachable.size()));
    if (fresh) {
      if (m.reachable.size() >= state_budget) throw BudgetExceeded("maxcount exceeds the state budget");
      std::string name = "{";
      for (StateId q = 0; q < n; ++q)
        if ((mask >> q) & 1u) name += (name.size() > 1 ? "," : "") + a.state_name(q);
      out.add_state(name + "}");
      m.reachable.push_back(mask);
    }
    return it->second;
  };
  out.set_initial(id_of(std::uint64_t{1} << a.initial()));
  const std::size_t letters = out.letters();
  for (std::size_t k = 0; k < m.reachable.size(); ++k) {
    const std::uint64_t mask = m.reachable[k];
    for (std::size_t l = 0; l < letters; ++l) {
      std::uint64_t next = 0;
      OpList ops;
      std::vector<std::vector<std::pair<StateId, bool>>> sources(n);
      for (StateId p = 0; p < n; ++p) {
        if (!((mask >> p) & 1u)) continue;
        for (bool bit : {false, true}) {
          const StateId q = a.transition(p, with_last_bit(a, l, bit)).target;
          next |= std::uint64_t{1} << q;
          sources[q].emplace_back(p, bit);
        }
      }
      for (StateId q = 0; q < n; ++q) {
        if (!((next >> q) & 1u)) continue;
        ops.push_back(CounterOp::reset(shadow[q]));
        for (const auto& [p, bit] : sources[q]) {
          if (!bit) {
            ops.push_back(CounterOp::max(shadow[q], m.counter_of[p]));
            continue;
          }
          ops.push_back(CounterOp::reset(bump));
          ops.push_back(CounterOp::max(bump, m.counter_of[p]));
          ops.push_back(CounterOp::inc(bump));
          ops.push_back(CounterOp::max(shadow[q], bump));
        }
      }
      for (StateId q = 0; q < n; ++q) {
        ops.push_back(CounterOp::reset(m.counter_of[q]));
        if ((next >> q) & 1u) ops.push_back(CounterOp::max(m.counter_of[q], shadow[q]));
      }
      const StateId target = id_of(next);
      out.set_transition(static_cast<StateId>(k), l, Transition{target, std::move(ops)});
    }
  }
  out.set_acceptance(Acceptance::constant(true));
  return m;
}

MaxAutomaton u_quantifier(const MaxAutomaton& a, const GuardOptions& options) {
  require_track(a);
  Maxcount m = maxcount_augment(a, options.state_budget);
  MaxAutomaton host = m.automaton;
  const CounterId v = host.add_counter("u");
  for (StateId s = 0; s < host.state_count(); ++s) {
    for (std::size_t l = 0; l < host.letters(); ++l) {
      Transition t = host.transition(s, l);
      const std::uint64_t mask = m.reachable[t.target];
      for (StateId q = 0; q < a.state_count(); ++q) {
        if (!((mask >> q) & 1u)) continue;
        t.ops.push_back(CounterOp::reset(v));
        t.ops.push_back(CounterOp::max(v, m.counter_of[q]));
        t.ops.push_back(CounterOp::guarded_out(v, q));
      }
      host.set_transition(s, l, std::move(t));
    }
  }
  host.set_acceptance(Acceptance::unbounded(v));
  GuardedMaxAutomaton g{std::move(host), {}};
  auto guard = std::make_shared<const MaxAutomaton>(fix_track_zero(a, a.tracks() - 1));
  for (StateId q = 0; q < a.state_count(); ++q) g.guards.push_back(Guard{guard, q});
  return remove_guards(g, options);
}

}  // namespace maxreg
