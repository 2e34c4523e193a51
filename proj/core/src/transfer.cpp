#include "maxreg/transfer.hpp"

#include <algorithm>

#include "maxreg/errors.hpp"

namespace maxreg {

const char* to_string(TransferClass t) {
  switch (t) {
    case TransferClass::None: return "none";
    case TransferClass::Transfer: return "T";
    case TransferClass::TransferWithIncrement: return "TI";
  }
  return "?";
}

TransferMatrix TransferMatrix::none(std::size_t counters) {
  TransferMatrix m;
  m.n_ = counters;
  m.cells_.assign(counters * counters, TransferClass::None);
  return m;
}

TransferMatrix TransferMatrix::identity(std::size_t counters) {
  TransferMatrix m = none(counters);
  for (CounterId c = 0; c < counters; ++c) m.at(c, c) = TransferClass::Transfer;
  return m;
}

bool TransferMatrix::join(const TransferMatrix& other) {
  bool changed = false;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (other.cells_[i] > cells_[i]) {
      cells_[i] = other.cells_[i];
      changed = true;
    }
  }
  return changed;
}

namespace {

TransferClass chain(TransferClass a, TransferClass b) {
  if (a == TransferClass::None || b == TransferClass::None) return TransferClass::None;
  return std::max(a, b);
}

TransferMatrix op_matrix(const CounterOp& op, std::size_t n) {
  TransferMatrix m = TransferMatrix::identity(n);
  switch (op.kind) {
    case OpKind::Increment: m.at(op.counter, op.counter) = TransferClass::TransferWithIncrement; break;
    case OpKind::Reset: m.at(op.counter, op.counter) = TransferClass::None; break;
    case OpKind::Output: break;
    case OpKind::MaxInto: m.at(op.arg, op.counter) = std::max(m.at(op.arg, op.counter), TransferClass::Transfer); break;
    case OpKind::GuardedOutput: throw UnsupportedError("transfer_of: guarded output");
  }
  return m;
}

}  // namespace

TransferMatrix compose_transfer(const TransferMatrix& m1, const TransferMatrix& m2) {
  if (m1.counters() != m2.counters()) throw InputError("compose_transfer: counter sets differ");
  const std::size_t n = m1.counters();
  TransferMatrix out = TransferMatrix::none(n);
  for (CounterId c = 0; c < n; ++c)
    for (CounterId e = 0; e < n; ++e) {
      if (m1.at(c, e) == TransferClass::None) continue;
      for (CounterId d = 0; d < n; ++d) out.at(c, d) = std::max(out.at(c, d), chain(m1.at(c, e), m2.at(e, d)));
    }
  return out;
}

TransferMatrix transfer_of(const OpList& ops, std::size_t counters) {
  TransferMatrix m = TransferMatrix::identity(counters);
  for (const auto& op : ops) m = compose_transfer(m, op_matrix(op, counters));
  return m;
}

TransferReachability::TransferReachability(const MaxAutomaton& a) : states_(a.state_count()) {
  const std::size_t n = a.counter_count();
  table_.assign(states_ * states_, TransferMatrix::none(n));
  reachable_.assign(states_ * states_, false);
  // per-edge labels, merged over letters leading to the same target
  std::vector<std::vector<std::pair<StateId, TransferMatrix>>> edges(states_);
  for (StateId s = 0; s < states_; ++s) {
    for (std::size_t l = 0; l < a.letters(); ++l) {
      const Transition& t = a.transition(s, l);
      if (t.target == kNoState) continue;
      const TransferMatrix m = transfer_of(t.ops, n);
      auto it = std::find_if(edges[s].begin(), edges[s].end(), [&](const auto& e) { return e.first == t.target; });
      if (it == edges[s].end()) edges[s].emplace_back(t.target, m);
      else it->second.join(m);
    }
  }
  for (StateId src = 0; src < states_; ++src) {
    std::vector<StateId> work;
    auto add = [&](StateId t, const TransferMatrix& m) {
      const std::size_t k = src * states_ + t;
      const bool fresh = !reachable_[k];
      reachable_[k] = true;
      if (table_[k].join(m) || fresh) work.push_back(t);
    };
    for (const auto& [t, m] : edges[src]) add(t, m);
    while (!work.empty()) {
      const StateId mid = work.back();
      work.pop_back();
      const TransferMatrix here = table_[src * states_ + mid];
      for (const auto& [t, m] : edges[mid]) add(t, compose_transfer(here, m));
    }
  }
}

TransferReachability transfer_reachability(const MaxAutomaton& a) { return TransferReachability(a); }

bool verify_dtrace(const MaxAutomaton& a, const FiniteWord& prefix, const DTrace& t) {
  if (t.loops.empty()) throw InputError("d-trace needs at least one loop position");
  const std::size_t n = a.counter_count();
  if (t.loop_counter >= n || t.target_counter >= n) throw InputError("d-trace counter out of range");
  if (t.target > prefix.size()) throw InputError("d-trace position beyond the prefix");
  for (std::size_t i = 0; i < t.loops.size(); ++i) {
    const std::size_t next = i + 1 < t.loops.size() ? t.loops[i + 1] : t.target;
    if (t.loops[i] >= next) throw InputError("d-trace positions must be strictly increasing");
  }
  std::vector<const OpList*> steps;
  StateId s = a.initial();
  for (Letter l : prefix.letters) {
    const Transition& tr = a.transition(s, l);
    if (tr.target == kNoState) throw InputError("transition undefined");
    steps.push_back(&tr.ops);
    s = tr.target;
  }
  auto segment = [&](std::size_t from, std::size_t to) {
    TransferMatrix m = TransferMatrix::identity(n);
    for (std::size_t i = from; i < to; ++i) m = compose_transfer(m, transfer_of(*steps[i], n));
    return m;
  };
  const CounterId c = t.loop_counter;
  for (std::size_t i = 0; i + 1 < t.loops.size(); ++i)
    if (segment(t.loops[i], t.loops[i + 1]).at(c, c) != TransferClass::TransferWithIncrement) return false;
  return segment(t.loops.back(), t.target).at(c, t.target_counter) != TransferClass::None;
}

}  // namespace maxreg
