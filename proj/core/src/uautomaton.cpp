#include "maxreg/uautomaton.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <tuple>

#include "maxreg/errors.hpp"
#include "maxreg/transfer.hpp"

namespace maxreg {

namespace {

/// Tracking mode: idle, or the value of c at the last loop position now sits
/// in e, with `grown` recording an increment since that position.
struct Mode {
  bool idle = true;
  CounterId c = 0, e = 0;
  bool grown = false;
  friend auto operator<=>(const Mode&, const Mode&) = default;
};

}  // namespace

UAutomaton unboundedness_uautomaton(const MaxAutomaton& a, CounterId d) {
  if (d >= a.counter_count()) throw InputError("unknown counter #" + std::to_string(d));
  const std::size_t n = a.counter_count();
  UAutomaton u;
  u.alphabet = a.alphabet();
  u.tracks = a.tracks();

  std::map<std::pair<StateId, Mode>, StateId> ids;
  std::deque<std::pair<StateId, Mode>> work;
  auto id_of = [&](StateId s, const Mode& m) {
    auto [it, fresh] = ids.emplace(std::make_pair(s, m), static_cast<StateId>(u.state_names.size()));
    if (fresh) {
      std::string name = a.state_name(s) + "/";
      name += m.idle ? std::string("idle")
                     : a.counter_name(m.c) + ":" + a.counter_name(m.e) + (m.grown ? ":+" : ":=");
      u.state_names.push_back(std::move(name));
      u.edges.emplace_back();
      work.emplace_back(s, m);
    }
    return it->second;
  };
  u.initial = id_of(a.initial(), Mode{});

  const OpList mark{CounterOp::inc(0)};
  const OpList emit{CounterOp::out(0), CounterOp::reset(0)};
  while (!work.empty()) {
    const auto [s, m] = work.front();
    work.pop_front();
    const StateId from = ids.at({s, m});
    std::vector<UAutomaton::Edge> out;
    for (std::size_t l = 0; l < a.letters(); ++l) {
      const Transition& t = a.transition(s, l);
      if (t.target == kNoState) continue;
      if (m.idle) {
        out.push_back({l, id_of(t.target, Mode{}), {}});
        // the first loop position opens the trace; each later one certifies one increment
        for (CounterId c = 0; c < n; ++c) out.push_back({l, id_of(t.target, Mode{false, c, c, false}), {}});
        continue;
      }
      // outputs of d reached by the traced value inside this transition
      TransferMatrix prefix = TransferMatrix::identity(n);
      bool emits = false;
      for (const auto& op : t.ops) {
        if (op.kind == OpKind::Output && op.counter == d && prefix.at(m.e, d) != TransferClass::None) emits = true;
        prefix = compose_transfer(prefix, transfer_of(OpList{op}, n));
      }
      if (emits) out.push_back({l, id_of(t.target, Mode{}), emit});
      for (CounterId e2 = 0; e2 < n; ++e2) {
        const TransferClass k = prefix.at(m.e, e2);
        if (k == TransferClass::None) continue;
        const bool grown = m.grown || k == TransferClass::TransferWithIncrement;
        out.push_back({l, id_of(t.target, Mode{false, m.c, e2, grown}), {}});
        if (e2 == m.c && grown) out.push_back({l, id_of(t.target, Mode{false, m.c, m.c, false}), mark});
      }
    }
    u.edges[from] = std::move(out);
  }
  return u;
}

namespace {

bool has_op(const OpList& ops, OpKind k) {
  return std::any_of(ops.begin(), ops.end(), [&](const CounterOp& op) { return op.kind == k; });
}

/// Tarjan SCCs over the edges accepted by `keep`.
std::vector<std::size_t> sccs(const UAutomaton& u, const std::function<bool(const UAutomaton::Edge&)>& keep) {
  const std::size_t n = u.state_count();
  std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0), comp(n, SIZE_MAX);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next = 0, count = 0;
  // iterative Tarjan: frames of (state, edge cursor)
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != SIZE_MAX) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = next++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, cursor] = frames.back();
      const auto& edges = u.edges[v];
      if (cursor < edges.size()) {
        const auto& e = edges[cursor++];
        if (!keep(e)) continue;
        const std::size_t w = e.target;
        if (index[w] == SIZE_MAX) {
          index[w] = low[w] = next++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        for (;;) {
          const std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
          if (w == done) break;
        }
        ++count;
      }
    }
  }
  return comp;
}

/// Shortest letter path from `from` to `to` using edges accepted by `keep`.
std::optional<std::vector<std::size_t>> path(const UAutomaton& u, StateId from, StateId to,
                                             const std::function<bool(StateId, const UAutomaton::Edge&)>& keep) {
  std::vector<std::pair<StateId, std::size_t>> parent(u.state_count(), {kNoState, 0});
  std::vector<bool> seen(u.state_count(), false);
  std::deque<StateId> q{from};
  seen[from] = true;
  while (!q.empty()) {
    const StateId s = q.front();
    q.pop_front();
    if (s == to) break;
    for (const auto& e : u.edges[s]) {
      if (seen[e.target] || !keep(s, e)) continue;
      seen[e.target] = true;
      parent[e.target] = {s, e.letter};
      q.push_back(e.target);
    }
  }
  if (!seen[to]) return std::nullopt;
  std::vector<std::size_t> letters;
  for (StateId s = to; s != from; s = parent[s].first) letters.push_back(parent[s].second);
  std::reverse(letters.begin(), letters.end());
  return letters;
}

FiniteWord to_word(const UAutomaton& u, const std::vector<std::size_t>& letters) {
  FiniteWord w{u.tracks, {}};
  for (std::size_t l : letters) w.letters.push_back(letter_at(l, u.tracks));
  return w;
}

}  // namespace

std::optional<UWitness> uauto_nonempty(const UAutomaton& u) {
  if (u.state_count() == 0) return std::nullopt;
  std::vector<bool> reach(u.state_count(), false);
  std::vector<StateId> stack{u.initial};
  reach[u.initial] = true;
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (const auto& e : u.edges[s]) {
      if (reach[e.target]) continue;
      reach[e.target] = true;
      stack.push_back(e.target);
    }
  }
  auto no_reset = [](const UAutomaton::Edge& e) { return !has_op(e.ops, OpKind::Reset); };
  const auto quiet = sccs(u, no_reset);
  const auto full = sccs(u, [](const UAutomaton::Edge&) { return true; });

  for (StateId p = 0; p < u.state_count(); ++p) {
    if (!reach[p]) continue;
    for (const auto& inc : u.edges[p]) {
      if (!has_op(inc.ops, OpKind::Increment) || !no_reset(inc) || quiet[inc.target] != quiet[p]) continue;
      // an output edge inside p's full component
      for (StateId s = 0; s < u.state_count(); ++s) {
        if (full[s] != full[p]) continue;
        for (const auto& outp : u.edges[s]) {
          if (!has_op(outp.ops, OpKind::Output) || full[outp.target] != full[p]) continue;
          auto in_quiet = [&](StateId from, const UAutomaton::Edge& e) {
            return no_reset(e) && quiet[from] == quiet[p] && quiet[e.target] == quiet[p];
          };
          auto in_full = [&](StateId from, const UAutomaton::Edge& e) {
            return full[from] == full[p] && full[e.target] == full[p];
          };
          auto anywhere = [](StateId, const UAutomaton::Edge&) { return true; };
          auto lead = path(u, u.initial, p, anywhere);
          auto back = path(u, inc.target, p, in_quiet);
          auto to_out = path(u, p, s, in_full);
          auto home = path(u, outp.target, p, in_full);
          if (!lead || !back || !to_out || !home) throw std::logic_error("uauto_nonempty: component path missing");
          std::vector<std::size_t> alpha{inc.letter};
          alpha.insert(alpha.end(), back->begin(), back->end());
          std::vector<std::size_t> beta = *to_out;
          beta.push_back(outp.letter);
          beta.insert(beta.end(), home->begin(), home->end());
          return UWitness{RampWord{to_word(u, *lead), to_word(u, alpha), to_word(u, beta), 1}, p};
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> uauto_max_output(const UAutomaton& u, const FiniteWord& w) {
  if (w.tracks != u.tracks) throw InputError("word track width differs from the U-automaton");
  std::map<StateId, std::size_t> current{{u.initial, 0}};
  std::optional<std::size_t> best;
  for (Letter l : w.letters) {
    const std::size_t li = letter_index(l, u.tracks);
    std::map<StateId, std::size_t> next;
    for (const auto& [s, value] : current) {
      for (const auto& e : u.edges[s]) {
        if (e.letter != li) continue;
        std::size_t v = value;
        for (const auto& op : e.ops) {
          if (op.kind == OpKind::Increment) ++v;
          else if (op.kind == OpKind::Reset) v = 0;
          else if (op.kind == OpKind::Output) best = std::max(best.value_or(0), v);
        }
        auto [it, fresh] = next.emplace(e.target, v);
        if (!fresh) it->second = std::max(it->second, v);
      }
    }
    current = std::move(next);
  }
  return best;
}

}  // namespace maxreg
