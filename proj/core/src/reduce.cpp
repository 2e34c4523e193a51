#include "maxreg/reduce.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "hashing.hpp"
#include "scc.hpp"

namespace maxreg {

MaxAutomaton trim(const MaxAutomaton& a) {
  const std::size_t letters = a.letters();
  std::vector<StateId> order;
  std::vector<StateId> renumber(a.state_count(), kNoState);
  renumber[a.initial()] = 0;
  order.push_back(a.initial());
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (std::size_t l = 0; l < letters; ++l) {
      const StateId t = a.transition(order[head], l).target;
      if (t == kNoState || renumber[t] != kNoState) continue;
      renumber[t] = static_cast<StateId>(order.size());
      order.push_back(t);
    }
  }

  std::vector<bool> relevant(a.counter_count(), false);
  std::vector<CounterId> work;
  for (CounterId c : a.acceptance().counters()) {
    relevant[c] = true;
    work.push_back(c);
  }
  std::vector<std::set<CounterId>> sources(a.counter_count());
  for (StateId s : order)
    for (std::size_t l = 0; l < letters; ++l)
      for (const auto& op : a.transition(s, l).ops)
        if (op.kind == OpKind::MaxInto) sources[op.counter].insert(op.arg);
  while (!work.empty()) {
    const CounterId c = work.back();
    work.pop_back();
    for (CounterId d : sources[c])
      if (!relevant[d]) relevant[d] = true, work.push_back(d);
  }

  MaxAutomaton out(a.alphabet(), a.tracks());
  std::vector<CounterId> counter_map(a.counter_count(), 0);
  for (CounterId c = 0; c < a.counter_count(); ++c)
    if (relevant[c]) counter_map[c] = out.add_counter(a.counter_name(c));
  for (StateId s : order) out.add_state(a.state_name(s));
  out.set_initial(0);
  for (StateId s : order) {
    for (std::size_t l = 0; l < letters; ++l) {
      const Transition& t = a.transition(s, l);
      Transition nt;
      nt.target = t.target == kNoState ? kNoState : renumber[t.target];
      for (auto op : t.ops) {
        if (!relevant[op.counter]) continue;
        op.counter = counter_map[op.counter];
        if (op.kind == OpKind::MaxInto) op.arg = counter_map[op.arg];
        nt.ops.push_back(op);
      }
      out.set_transition(renumber[s], l, std::move(nt));
    }
  }
  out.set_acceptance(a.acceptance().renamed([&](CounterId c) { return counter_map[c]; }));
  return out;
}

MaxAutomaton merge_states(const MaxAutomaton& a) {
  const std::size_t n = a.state_count();
  const std::size_t letters = a.letters();
  std::map<OpList, std::uint32_t> interned;
  std::vector<std::uint32_t> op_ids(n * letters);
  for (StateId s = 0; s < n; ++s)
    for (std::size_t l = 0; l < letters; ++l)
      op_ids[s * letters + l] =
          interned.emplace(a.transition(s, l).ops, static_cast<std::uint32_t>(interned.size())).first->second;

  std::vector<std::uint32_t> cls(n, 0);
  std::size_t classes = 1;
  for (;;) {
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, detail::VectorHash> ids;
    std::vector<std::uint32_t> next(n);
    std::vector<std::uint32_t> sig(2 * letters + 1);
    for (StateId s = 0; s < n; ++s) {
      sig[0] = cls[s];
      for (std::size_t l = 0; l < letters; ++l) {
        const StateId t = a.transition(s, l).target;
        sig[2 * l + 1] = op_ids[s * letters + l];
        sig[2 * l + 2] = t == kNoState ? UINT32_MAX : cls[t];
      }
      next[s] = ids.emplace(sig, static_cast<std::uint32_t>(ids.size())).first->second;
    }
    const std::size_t count = ids.size();
    cls = std::move(next);
    if (count == classes) break;
    classes = count;
  }
  if (classes == n) return a;

  MaxAutomaton out(a.alphabet(), a.tracks());
  for (CounterId c = 0; c < a.counter_count(); ++c) out.add_counter(a.counter_name(c));
  std::vector<StateId> rep(classes, kNoState);
  // number classes by first representative so the result is deterministic
  std::vector<StateId> renumber(classes, kNoState);
  for (StateId s = 0; s < n; ++s) {
    if (rep[cls[s]] != kNoState) continue;
    rep[cls[s]] = s;
    renumber[cls[s]] = out.add_state(a.state_name(s));
  }
  out.set_initial(renumber[cls[a.initial()]]);
  for (std::size_t k = 0; k < classes; ++k) {
    const StateId s = rep[k];
    for (std::size_t l = 0; l < letters; ++l) {
      Transition t = a.transition(s, l);
      if (t.target != kNoState) t.target = renumber[cls[t.target]];
      out.set_transition(renumber[k], l, std::move(t));
    }
  }
  out.set_acceptance(a.acceptance());
  return out;
}

namespace {

struct Edge {
  std::uint32_t from = 0, to = 0;  // local state numbers
  std::uint64_t incs = 0, outs = 0;  // atom bits
};

/// Does some strongly connected subgraph of `edges` make `f` evaluate to
/// `target`, where B(atom j) holds iff the subgraph lacks an inc or an out of j?
class CycleSearch {
 public:
  CycleSearch(std::size_t states, std::vector<Edge> edges, std::function<bool(std::uint64_t, std::uint64_t)> eval,
              std::size_t budget)
      : states_(states), edges_(std::move(edges)), eval_(std::move(eval)), budget_(budget) {}

  /// nullopt when the budget ran out.
  std::optional<bool> exists(bool target) {
    target_ = target;
    seen_.clear();
    exhausted_ = false;
    std::vector<bool> all(edges_.size(), true);
    const bool found = search(all);
    if (exhausted_ && !found) return std::nullopt;
    return found;
  }

 private:
  bool search(const std::vector<bool>& keep) {
    if (!seen_.insert(keep).second) return false;
    if (budget_ == 0) {
      exhausted_ = true;
      return false;
    }
    --budget_;
    std::vector<std::vector<std::uint32_t>> adj(states_);
    for (std::size_t e = 0; e < edges_.size(); ++e)
      if (keep[e]) adj[edges_[e].from].push_back(edges_[e].to);
    std::size_t count = 0;
    const auto comp = detail::strongly_connected(adj, count);
    std::vector<std::uint64_t> incs(count, 0), outs(count, 0);
    std::vector<bool> cyclic(count, false);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (!keep[e] || comp[edges_[e].from] != comp[edges_[e].to]) continue;
      const std::size_t k = comp[edges_[e].from];
      cyclic[k] = true;
      incs[k] |= edges_[e].incs;
      outs[k] |= edges_[e].outs;
    }
    for (std::size_t k = 0; k < count; ++k) {
      if (!cyclic[k]) continue;
      if (eval_(incs[k], outs[k]) == target_) return true;
      const std::uint64_t both = incs[k] & outs[k];
      for (unsigned j = 0; j < 64; ++j) {
        if (!((both >> j) & 1u)) continue;
        for (int side = 0; side < 2; ++side) {
          std::vector<bool> sub(edges_.size(), false);
          for (std::size_t e = 0; e < edges_.size(); ++e) {
            if (!keep[e] || comp[edges_[e].from] != k || comp[edges_[e].to] != k) continue;
            const std::uint64_t bits = side == 0 ? edges_[e].incs : edges_[e].outs;
            sub[e] = !((bits >> j) & 1u);
          }
          if (search(sub)) return true;
        }
      }
    }
    return false;
  }

  std::size_t states_;
  std::vector<Edge> edges_;
  std::function<bool(std::uint64_t, std::uint64_t)> eval_;
  std::size_t budget_;
  bool target_ = true;
  bool exhausted_ = false;
  std::set<std::vector<bool>> seen_;
};

enum class Settled : std::uint8_t { Open, True, False };

}  // namespace

MaxAutomaton normalize_components(const MaxAutomaton& a, std::size_t budget) {
  if (a.has_guarded_ops()) return a;
  const std::size_t n = a.state_count();
  const std::size_t letters = a.letters();
  const Acceptance f = a.acceptance().simplified();
  if (f.as_constant()) {
    // constant acceptance: no counter matters
    MaxAutomaton out(a.alphabet(), a.tracks());
    for (StateId s = 0; s < n; ++s) out.add_state(a.state_name(s));
    out.set_initial(a.initial());
    for (StateId s = 0; s < n; ++s)
      for (std::size_t l = 0; l < letters; ++l) out.set_transition(s, l, Transition{a.transition(s, l).target, {}});
    out.set_acceptance(f);
    return out;
  }

  std::vector<std::vector<std::uint32_t>> adj(n);
  for (StateId s = 0; s < n; ++s)
    for (std::size_t l = 0; l < letters; ++l) adj[s].push_back(a.transition(s, l).target);
  std::size_t count = 0;
  const auto comp = detail::strongly_connected(adj, count);

  std::vector<std::vector<StateId>> members(count);
  for (StateId s = 0; s < n; ++s) members[comp[s]].push_back(s);

  std::vector<Settled> settled(count, Settled::Open);
  std::vector<bool> cyclic(count, false);
  for (std::size_t k = 0; k < count; ++k) {
    // counters emitted inside the component, and those whose value can only grow there
    std::set<CounterId> emitted, incremented, wobbly;
    std::vector<Edge> edges;
    std::map<StateId, std::uint32_t> index;
    for (StateId s : members[k]) index.emplace(s, static_cast<std::uint32_t>(index.size()));
    for (StateId s : members[k]) {
      for (std::size_t l = 0; l < letters; ++l) {
        const Transition& t = a.transition(s, l);
        if (comp[t.target] != k) continue;
        cyclic[k] = true;
        for (const auto& op : t.ops) {
          if (op.kind == OpKind::Output) emitted.insert(op.counter);
          if (op.kind == OpKind::Increment) incremented.insert(op.counter);
          if (op.kind == OpKind::Reset || op.kind == OpKind::MaxInto) wobbly.insert(op.counter);
        }
      }
    }
    if (!cyclic[k]) continue;
    const Acceptance local_f = f.substitute([&](CounterId c) -> std::optional<bool> {
      if (!emitted.contains(c)) return true;
      if (!wobbly.contains(c) && !incremented.contains(c)) return true;
      return std::nullopt;
    });
    if (auto v = local_f.semantic_constant()) {
      settled[k] = *v ? Settled::True : Settled::False;
      continue;
    }
    const auto atoms = local_f.counters();
    if (atoms.size() > 64) continue;
    if (std::any_of(atoms.begin(), atoms.end(), [&](CounterId c) { return wobbly.contains(c); })) continue;
    std::map<CounterId, unsigned> bit;
    for (CounterId c : atoms) bit.emplace(c, static_cast<unsigned>(bit.size()));
    for (StateId s : members[k]) {
      for (std::size_t l = 0; l < letters; ++l) {
        const Transition& t = a.transition(s, l);
        if (comp[t.target] != k) continue;
        Edge e{index.at(s), index.at(t.target), 0, 0};
        for (const auto& op : t.ops) {
          auto it = bit.find(op.counter);
          if (it == bit.end()) continue;
          if (op.kind == OpKind::Increment) e.incs |= std::uint64_t{1} << it->second;
          if (op.kind == OpKind::Output) e.outs |= std::uint64_t{1} << it->second;
        }
        edges.push_back(e);
      }
    }
    // a monotone counter is unbounded iff it is both incremented and output infinitely often
    CycleSearch search(members[k].size(), std::move(edges),
                       [&](std::uint64_t incs, std::uint64_t outs) {
                         return local_f.eval([&](CounterId c) {
                           const unsigned j = bit.at(c);
                           return !(((incs & outs) >> j) & 1u);
                         });
                       },
                       budget);
    const auto can_fail = search.exists(false);
    if (can_fail == false) {
      settled[k] = Settled::True;
      continue;
    }
    const auto can_hold = search.exists(true);
    if (can_hold == false) settled[k] = Settled::False;
  }

  bool any_open = false, any_true = false;
  for (std::size_t k = 0; k < count; ++k) {
    if (!cyclic[k]) continue;
    any_open |= settled[k] == Settled::Open;
    any_true |= settled[k] == Settled::True;
  }

  MaxAutomaton out(a.alphabet(), a.tracks());
  for (StateId s = 0; s < n; ++s) out.add_state(a.state_name(s));
  out.set_initial(a.initial());
  if (!any_open) {
    for (StateId s = 0; s < n; ++s)
      for (std::size_t l = 0; l < letters; ++l) out.set_transition(s, l, Transition{a.transition(s, l).target, {}});
    if (!any_true) {
      out.set_acceptance(Acceptance::constant(false));
      return out;
    }
    const CounterId t = out.add_counter("t");
    for (StateId s = 0; s < n; ++s) {
      if (settled[comp[s]] != Settled::True) continue;
      for (std::size_t l = 0; l < letters; ++l) {
        const StateId target = a.transition(s, l).target;
        if (comp[target] == comp[s]) out.set_transition(s, l, Transition{target, {CounterOp::inc(t), CounterOp::out(t)}});
      }
    }
    out.set_acceptance(Acceptance::unbounded(t));
    return out;
  }

  for (CounterId c = 0; c < a.counter_count(); ++c) out.add_counter(a.counter_name(c));
  // marker counters only for the kinds of settled components that exist
  bool any_false = false;
  for (std::size_t k = 0; k < count; ++k) any_false |= cyclic[k] && settled[k] == Settled::False;
  const CounterId t = any_true ? out.add_counter("t") : 0;
  const CounterId fail = any_false ? out.add_counter("f") : 0;
  for (StateId s = 0; s < n; ++s) {
    for (std::size_t l = 0; l < letters; ++l) {
      const Transition& tr = a.transition(s, l);
      Transition nt{tr.target, {}};
      if (comp[tr.target] == comp[s]) {
        switch (settled[comp[s]]) {
          case Settled::Open: nt.ops = tr.ops; break;
          case Settled::True: nt.ops = {CounterOp::inc(t), CounterOp::out(t)}; break;
          case Settled::False: nt.ops = {CounterOp::inc(fail), CounterOp::out(fail)}; break;
        }
      }
      out.set_transition(s, l, std::move(nt));
    }
  }
  Acceptance open = any_false ? Acceptance::conj(Acceptance::bounded(fail), f) : f;
  out.set_acceptance((any_true ? Acceptance::disj(Acceptance::unbounded(t), open) : open).simplified());
  return out;
}


namespace {

/// Symbolic counter value at the end of an op list: max over (base, offset),
/// where base 0 is the constant zero and base k+1 the entry value of class k.
using SymValue = std::map<std::uint32_t, std::uint64_t>;

void sym_join(SymValue& into, const SymValue& from) {
  for (auto [base, off] : from) {
    auto [it, fresh] = into.emplace(base, off);
    if (!fresh) it->second = std::max(it->second, off);
  }
}

std::string sym_key(const SymValue& v) {
  std::string out;
  for (auto [base, off] : v) out += std::to_string(base) + "+" + std::to_string(off) + ",";
  return out;
}

}  // namespace

MaxAutomaton merge_counters(const MaxAutomaton& a) {
  const std::size_t n = a.counter_count();
  if (n < 2 || a.has_guarded_ops()) return a;
  // greatest fixpoint: all counters start at 0, so begin with one class
  std::vector<std::uint32_t> cls(n, 0);
  for (;;) {
    std::vector<std::string> sig(n);
    for (StateId s = 0; s < a.state_count(); ++s)
      for (std::size_t l = 0; l < a.letters(); ++l) {
        const Transition& t = a.transition(s, l);
        std::vector<SymValue> val(n);
        for (CounterId c = 0; c < n; ++c) val[c] = {{cls[c] + 1, 0}};
        std::vector<std::string> outs(n);
        for (const auto& op : t.ops) {
          switch (op.kind) {
            case OpKind::Increment:
              for (auto& [base, off] : val[op.counter]) ++off;
              break;
            case OpKind::Reset: val[op.counter] = {{0, 0}}; break;
            case OpKind::Output: outs[op.counter] += "[" + sym_key(val[op.counter]) + "]"; break;
            case OpKind::MaxInto: {
              const SymValue src = val[op.arg];
              sym_join(val[op.counter], src);
              break;
            }
            case OpKind::GuardedOutput: break;
          }
        }
        for (CounterId c = 0; c < n; ++c) sig[c] += sym_key(val[c]) + outs[c] + ";";
      }
    std::map<std::pair<std::uint32_t, std::string>, std::uint32_t> ids;
    std::vector<std::uint32_t> next(n);
    for (CounterId c = 0; c < n; ++c)
      next[c] = ids.emplace(std::make_pair(cls[c], sig[c]), static_cast<std::uint32_t>(ids.size())).first->second;
    const bool stable = ids.size() == *std::max_element(cls.begin(), cls.end()) + 1u;
    cls = std::move(next);
    if (stable) break;
  }
  std::vector<CounterId> rep(n);
  std::map<std::uint32_t, CounterId> first;
  for (CounterId c = 0; c < n; ++c) rep[c] = first.emplace(cls[c], c).first->second;
  if (first.size() == n) return a;
  MaxAutomaton out = a;
  out.set_acceptance(a.acceptance().renamed([&](CounterId c) { return rep[c]; }).simplified());
  return out;
}

MaxAutomaton reduce(const MaxAutomaton& a, const ReduceOptions& options) {
  MaxAutomaton cur = trim(merge_counters(trim(a)));
  if (options.normalize_components) cur = trim(normalize_components(cur, options.component_budget));
  if (options.merge_states) cur = trim(merge_states(cur));
  return cur;
}

}  // namespace maxreg
