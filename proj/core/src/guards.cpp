#include "maxreg/guards.hpp"

#include <map>

#include "maxreg/errors.hpp"
#include "maxreg/transducer.hpp"

namespace maxreg {

namespace {

/// Host plus thread pools, one pool per (guard automaton, guarded counter),
/// read together with one spanning transducer per guard automaton.
class ThreadChecker : public SpanChecker {
 public:
  ThreadChecker(const GuardedMaxAutomaton& g, std::vector<const MaxAutomaton*> automata,
                std::vector<std::size_t> automaton_of_guard)
      : g_(g), automata_(std::move(automata)), automaton_of_guard_(std::move(automaton_of_guard)) {
    const MaxAutomaton& h = g.host;
    names_ = h.counter_names();
    // pools in order of first guarded output
    for (StateId s = 0; s < h.state_count(); ++s)
      for (std::size_t l = 0; l < h.letters(); ++l)
        for (const auto& op : h.transition(s, l).ops)
          if (op.kind == OpKind::GuardedOutput) pool_of(automaton_of_guard_.at(op.arg), op.counter);
    // acceptance copies per guard automaton and track
    for (std::size_t j = 0; j < automata_.size(); ++j) {
      const MaxAutomaton& G = *automata_[j];
      std::vector<std::vector<CounterId>> copies(G.state_count());
      std::vector<CounterId> restarts;
      for (std::size_t i = 0; i < G.state_count(); ++i) {
        for (CounterId c = 0; c < G.counter_count(); ++c)
          copies[i].push_back(add("g" + std::to_string(j) + "." + G.counter_name(c) + "@" + std::to_string(i)));
        restarts.push_back(add("g" + std::to_string(j) + ".z@" + std::to_string(i)));
      }
      copies_.push_back(std::move(copies));
      restarts_.push_back(std::move(restarts));
    }
    for (auto& p : pools_) {
      const MaxAutomaton& G = *automata_[p.automaton];
      const std::string tag = "p" + std::to_string(&p - pools_.data());
      for (StateId s = 0; s < G.state_count(); ++s) {
        p.number.push_back(add(tag + ".n" + std::to_string(s)));
        p.shadow.push_back(add(tag + ".n'" + std::to_string(s)));
      }
      for (std::size_t i = 0; i < G.state_count(); ++i) p.emitted.push_back(add(tag + ".o@" + std::to_string(i)));
    }
  }

  std::vector<std::string> counter_names() const override { return names_; }

  Acceptance acceptance() const override {
    return g_.host.acceptance()
        .map_atoms([&](CounterId c) {
          std::vector<Acceptance> parts{Acceptance::bounded(c)};
          for (const auto& p : pools_) {
            if (p.counter != c) continue;
            const MaxAutomaton& G = *automata_[p.automaton];
            std::vector<Acceptance> tracks;
            for (std::size_t i = 0; i < G.state_count(); ++i) {
              const auto& copy = copies_[p.automaton][i];
              tracks.push_back(Acceptance::conj({G.acceptance().renamed([&](CounterId d) { return copy[d]; }),
                                                 Acceptance::bounded(restarts_[p.automaton][i]),
                                                 Acceptance::unbounded(p.emitted[i])}));
            }
            parts.push_back(Acceptance::negate(Acceptance::disj(std::move(tracks))));
          }
          return Acceptance::conj(std::move(parts));
        })
        .simplified();
  }

  Key initial() const override {
    Key key{g_.host.initial()};
    key.resize(1 + 2 * pools_.size(), 0);
    return key;
  }

  Key step(const Key& key, std::size_t letter, std::span<const SpanStep> steps, OpList& ops) const override {
    Key next(key.size(), 0);
    std::vector<std::uint64_t> masks(pools_.size());
    // advance live threads; merged threads keep the larger number
    for (std::size_t m = 0; m < pools_.size(); ++m) {
      const Pool& p = pools_[m];
      const MaxAutomaton& G = *automata_[p.automaton];
      const std::uint64_t mask = key[1 + 2 * m] | (std::uint64_t{key[2 + 2 * m]} << 32);
      std::uint64_t moved = 0;
      for (StateId s = 0; s < G.state_count(); ++s)
        if ((mask >> s) & 1u) moved |= std::uint64_t{1} << G.transition(s, letter).target;
      for (StateId t = 0; t < G.state_count(); ++t) {
        if (!((moved >> t) & 1u)) continue;
        ops.push_back(CounterOp::reset(p.shadow[t]));
        for (StateId s = 0; s < G.state_count(); ++s)
          if (((mask >> s) & 1u) && G.transition(s, letter).target == t) ops.push_back(CounterOp::max(p.shadow[t], p.number[s]));
      }
      for (StateId t = 0; t < G.state_count(); ++t) {
        ops.push_back(CounterOp::reset(p.number[t]));
        if ((moved >> t) & 1u) ops.push_back(CounterOp::max(p.number[t], p.shadow[t]));
      }
      masks[m] = moved;
    }
    // host ops; guarded outputs spawn threads
    const Transition& ht = g_.host.transition(key[0], letter);
    next[0] = ht.target;
    for (const auto& op : ht.ops) {
      if (op.kind != OpKind::GuardedOutput) {
        ops.push_back(op);
        continue;
      }
      const std::size_t m = find_pool(automaton_of_guard_[op.arg], op.counter);
      const StateId start = g_.guards[op.arg].start;
      const CounterId n = pools_[m].number[start];
      if (!((masks[m] >> start) & 1u)) ops.push_back(CounterOp::reset(n));
      ops.push_back(CounterOp::max(n, op.counter));
      masks[m] |= std::uint64_t{1} << start;
    }
    // per track of each guard automaton: replay for (A), emit matching thread numbers for (B')
    for (std::size_t j = 0; j < automata_.size(); ++j) {
      const SpanStep& s = steps[j];
      const MaxAutomaton& G = *automata_[j];
      for (std::size_t i = 0; i < G.state_count(); ++i) {
        if ((s.kept >> i) & 1u) {
          for (auto op : G.transition(s.before[i], letter).ops) {
            op.counter = copies_[j][i][op.counter];
            if (op.kind == OpKind::MaxInto) op.arg = copies_[j][i][op.arg];
            ops.push_back(op);
          }
        } else {
          ops.push_back(CounterOp::inc(restarts_[j][i]));
          ops.push_back(CounterOp::out(restarts_[j][i]));
        }
      }
    }
    for (std::size_t m = 0; m < pools_.size(); ++m) {
      const Pool& p = pools_[m];
      const SpanStep& s = steps[p.automaton];
      for (std::size_t i = 0; i < s.after.size(); ++i) {
        const StateId q = s.after[i];
        if (!((masks[m] >> q) & 1u)) continue;
        ops.push_back(CounterOp::reset(p.emitted[i]));
        ops.push_back(CounterOp::max(p.emitted[i], p.number[q]));
        ops.push_back(CounterOp::out(p.emitted[i]));
      }
      next[1 + 2 * m] = static_cast<std::uint32_t>(masks[m]);
      next[2 + 2 * m] = static_cast<std::uint32_t>(masks[m] >> 32);
    }
    return next;
  }

  std::string describe(const Key& key) const override {
    std::string out = g_.host.state_name(key[0]);
    for (std::size_t m = 0; m < pools_.size(); ++m) {
      const std::uint64_t mask = key[1 + 2 * m] | (std::uint64_t{key[2 + 2 * m]} << 32);
      out += "|";
      for (unsigned s = 0; s < 64; ++s)
        if ((mask >> s) & 1u) out += std::to_string(s) + ",";
    }
    return out;
  }

 private:
  struct Pool {
    std::size_t automaton = 0;
    CounterId counter = 0;
    std::vector<CounterId> number, shadow, emitted;
  };

  CounterId add(std::string name) {
    names_.push_back(std::move(name));
    return static_cast<CounterId>(names_.size() - 1);
  }

  std::size_t find_pool(std::size_t automaton, CounterId c) const {
    for (std::size_t m = 0; m < pools_.size(); ++m)
      if (pools_[m].automaton == automaton && pools_[m].counter == c) return m;
    throw std::logic_error("remove_guards: missing pool");
  }

  void pool_of(std::size_t automaton, CounterId c) {
    for (const auto& p : pools_)
      if (p.automaton == automaton && p.counter == c) return;
    pools_.push_back(Pool{automaton, c, {}, {}, {}});
  }

  const GuardedMaxAutomaton& g_;
  std::vector<const MaxAutomaton*> automata_;
  std::vector<std::size_t> automaton_of_guard_;
  std::vector<std::string> names_;
  std::vector<Pool> pools_;
  std::vector<std::vector<std::vector<CounterId>>> copies_;
  std::vector<std::vector<CounterId>> restarts_;
};

}  // namespace

MaxAutomaton remove_guards(const GuardedMaxAutomaton& g, const GuardOptions& options) {
  if (g.guards.size() > options.guard_limit)
    throw BudgetExceeded(std::to_string(g.guards.size()) + " guards exceed the limit of " +
                         std::to_string(options.guard_limit));
  std::vector<const MaxAutomaton*> automata;
  std::vector<std::size_t> automaton_of_guard;
  std::map<const MaxAutomaton*, std::size_t> index;
  for (const auto& guard : g.guards) {
    if (!guard.automaton) throw InputError("guard without an automaton");
    const MaxAutomaton& G = *guard.automaton;
    if (G.has_guarded_ops()) throw InputError("guard automata must be unguarded");
    if (G.letters() != g.host.letters() || G.alphabet().names() != g.host.alphabet().names())
      throw InputError("guard automaton reads a different alphabet");
    if (guard.start >= G.state_count()) throw InputError("guard start state out of range");
    if (G.state_count() > 64) throw BudgetExceeded("guard automaton has more than 64 states");
    auto [it, fresh] = index.emplace(&G, automata.size());
    if (fresh) automata.push_back(&G);
    automaton_of_guard.push_back(it->second);
  }
  for (StateId s = 0; s < g.host.state_count(); ++s)
    for (std::size_t l = 0; l < g.host.letters(); ++l)
      for (const auto& op : g.host.transition(s, l).ops)
        if (op.kind == OpKind::GuardedOutput && op.arg >= g.guards.size())
          throw InputError("guarded output refers to unknown guard " + std::to_string(op.arg));

  std::vector<std::unique_ptr<SpanningTransducer>> owned;
  std::vector<const SpanningTransducer*> ts;
  for (const auto* G : automata) {
    owned.push_back(std::make_unique<SpanningTransducer>(*G, options.state_budget));
    ts.push_back(owned.back().get());
  }
  ThreadChecker checker(g, automata, automaton_of_guard);
  return compose_with_transducers(checker, ts, g.host.alphabet(), g.host.tracks(), options.state_budget);
}

}  // namespace maxreg
