#include "maxreg/boolean_ops.hpp"

#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "maxreg/errors.hpp"

namespace maxreg {

namespace {

std::string fresh_name(std::string base, const std::set<std::string>& taken) {
  while (taken.count(base)) base += "'";
  return base;
}

}  // namespace

MaxAutomaton product(const MaxAutomaton& a1, const MaxAutomaton& a2, Connective op, std::size_t state_budget) {
  if (!(a1.alphabet() == a2.alphabet())) throw InputError("product: alphabet mismatch");
  if (a1.tracks() != a2.tracks()) throw InputError("product: track width mismatch");

  MaxAutomaton out(a1.alphabet(), a1.tracks());
  std::set<std::string> taken;
  for (const auto& n : a1.counter_names()) {
    out.add_counter(n);
    taken.insert(n);
  }
  const auto offset = static_cast<CounterId>(a1.counter_count());
  for (const auto& n : a2.counter_names()) {
    auto name = taken.count(n) ? fresh_name(n + "_2", taken) : n;
    taken.insert(name);
    out.add_counter(name);
  }

  std::unordered_map<std::uint64_t, StateId> ids;
  std::deque<std::pair<StateId, StateId>> queue;
  auto intern = [&](StateId p, StateId q) {
    const std::uint64_t key = (std::uint64_t{p} << 32) | q;
    auto [it, inserted] = ids.try_emplace(key, static_cast<StateId>(ids.size()));
    if (inserted) {
      if (ids.size() > state_budget) throw BudgetExceeded("product exceeds state budget");
      out.add_state(a1.state_name(p) + "," + a2.state_name(q));
      queue.emplace_back(p, q);
    }
    return it->second;
  };
  out.set_initial(intern(a1.initial(), a2.initial()));
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    const StateId src = ids.at((std::uint64_t{p} << 32) | q);
    for (std::size_t li = 0; li < a1.letters(); ++li) {
      const Transition& t1 = a1.transition(p, li);
      const Transition& t2 = a2.transition(q, li);
      Transition t;
      t.target = intern(t1.target, t2.target);
      t.ops = t1.ops;
      for (CounterOp o : t2.ops) {
        o.counter += offset;
        if (o.kind == OpKind::MaxInto) o.arg += offset;
        t.ops.push_back(o);
      }
      out.set_transition(src, li, std::move(t));
    }
  }
  out.set_acceptance(combine(op, a1.acceptance(), a2.acceptance().renamed([&](CounterId c) { return c + offset; })));
  return out;
}

MaxAutomaton complement(const MaxAutomaton& a) {
  MaxAutomaton out = a;
  out.set_acceptance(Acceptance::negate(a.acceptance()).simplified());
  return out;
}

MaxAutomaton add_track(const MaxAutomaton& a) {
  MaxAutomaton out(a.alphabet(), a.tracks() + 1);
  for (const auto& n : a.state_names()) out.add_state(n);
  for (const auto& n : a.counter_names()) out.add_counter(n);
  out.set_initial(a.initial());
  const Bits fresh = Bits{1} << a.tracks();
  for (StateId s = 0; s < a.state_count(); ++s) {
    for (std::size_t li = 0; li < a.letters(); ++li) {
      Letter l = letter_at(li, a.tracks());
      out.set_transition(s, l, a.transition(s, li));
      out.set_transition(s, Letter{l.symbol, l.bits | fresh}, a.transition(s, li));
    }
  }
  out.set_acceptance(a.acceptance());
  return out;
}

MaxAutomaton fix_track_zero(const MaxAutomaton& a, unsigned track) {
  if (track >= a.tracks()) throw InputError("fix_track_zero: track " + std::to_string(track) + " out of range");
  MaxAutomaton out(a.alphabet(), a.tracks() - 1);
  for (const auto& n : a.state_names()) out.add_state(n);
  for (const auto& n : a.counter_names()) out.add_counter(n);
  out.set_initial(a.initial());
  const Bits low = (Bits{1} << track) - 1;
  for (StateId s = 0; s < a.state_count(); ++s) {
    for (std::size_t li = 0; li < out.letters(); ++li) {
      Letter l = letter_at(li, out.tracks());
      Letter wide{l.symbol, (l.bits & low) | ((l.bits & ~low) << 1)};
      out.set_transition(s, li, a.transition(s, wide));
    }
  }
  out.set_acceptance(a.acceptance());
  return out;
}

MaxAutomaton desugar_outputs(const MaxAutomaton& a) {
  MaxAutomaton out(a.alphabet(), a.tracks());
  for (const auto& n : a.state_names()) out.add_state(n);
  std::set<std::string> taken(a.counter_names().begin(), a.counter_names().end());
  for (const auto& n : a.counter_names()) out.add_counter(n);
  std::vector<CounterId> shadow;
  for (const auto& n : a.counter_names()) {
    auto name = fresh_name(n + "'", taken);
    taken.insert(name);
    shadow.push_back(out.add_counter(name));
  }
  out.set_initial(a.initial());
  for (StateId s = 0; s < a.state_count(); ++s) {
    for (std::size_t li = 0; li < a.letters(); ++li) {
      const Transition& t = a.transition(s, li);
      Transition nt{t.target, {}};
      for (const auto& op : t.ops) {
        if (op.kind == OpKind::Output) {
          const CounterId sh = shadow[op.counter];
          nt.ops.push_back(CounterOp::reset(sh));
          nt.ops.push_back(CounterOp::max(sh, op.counter));
          nt.ops.push_back(CounterOp::out(sh));
        } else {
          nt.ops.push_back(op);
        }
      }
      out.set_transition(s, li, std::move(nt));
    }
  }
  out.set_acceptance(a.acceptance().renamed([&](CounterId c) { return shadow[c]; }));
  return out;
}

}  // namespace maxreg
