#include "maxreg/loop_effect.hpp"

#include <algorithm>
#include <functional>

#include "maxreg/errors.hpp"

namespace maxreg {

Weight weight_add(Weight a, Weight b) {
  if (a == kNoFlow || b == kNoFlow) return kNoFlow;
  if (a == kInfinite || b == kInfinite) return kInfinite;
  return a + b;
}

LoopEffect LoopEffect::identity(std::size_t counters) {
  LoopEffect e;
  e.n_ = counters;
  e.weights_.assign(counters * counters, kNoFlow);
  e.constants_.assign(counters, kNoFlow);
  for (std::size_t c = 0; c < counters; ++c) e.weights_[c * counters + c] = 0;
  return e;
}

LoopEffect effect_of(const OpList& ops, std::size_t counters) {
  LoopEffect e = LoopEffect::identity(counters);
  extend(e, ops);
  return e;
}

void extend(LoopEffect& e, const OpList& ops) {
  const std::size_t counters = e.counters();
  for (const auto& op : ops) {
    const CounterId c = op.counter;
    switch (op.kind) {
      case OpKind::Increment:
        for (CounterId d = 0; d < counters; ++d) e.weight(c, d) = weight_add(e.weight(c, d), 1);
        e.constant(c) = weight_add(e.constant(c), 1);
        break;
      case OpKind::Reset:
        for (CounterId d = 0; d < counters; ++d) e.weight(c, d) = kNoFlow;
        e.constant(c) = 0;
        break;
      case OpKind::Output: {
        OutputEvent ev{c, std::vector<Weight>(counters), e.constant(c)};
        for (CounterId d = 0; d < counters; ++d) ev.weights[d] = e.weight(c, d);
        e.outputs().push_back(std::move(ev));
        break;
      }
      case OpKind::MaxInto:
        for (CounterId d = 0; d < counters; ++d) e.weight(c, d) = std::max(e.weight(c, d), e.weight(op.arg, d));
        e.constant(c) = std::max(e.constant(c), e.constant(op.arg));
        break;
      case OpKind::GuardedOutput:
        throw UnsupportedError("effect_of: guarded output has no loop effect");
    }
  }
}

namespace {

/// Row vector (weights, constant) pushed through `first`.
void push_through(const LoopEffect& first, const std::vector<Weight>& row, Weight constant,
                  std::vector<Weight>& out_row, Weight& out_constant) {
  const std::size_t n = first.counters();
  out_row.assign(n, kNoFlow);
  out_constant = constant;
  for (CounterId e = 0; e < n; ++e) {
    if (row[e] == kNoFlow) continue;
    for (CounterId d = 0; d < n; ++d)
      out_row[d] = std::max(out_row[d], weight_add(row[e], first.weight(e, d)));
    out_constant = std::max(out_constant, weight_add(row[e], first.constant(e)));
  }
}

}  // namespace

LoopEffect compose(const LoopEffect& first, const LoopEffect& second) {
  if (first.counters() != second.counters()) throw InputError("compose: counter sets differ");
  const std::size_t n = first.counters();
  LoopEffect out = LoopEffect::identity(n);
  std::vector<Weight> row(n);
  for (CounterId c = 0; c < n; ++c) {
    for (CounterId e = 0; e < n; ++e) row[e] = second.weight(c, e);
    std::vector<Weight> pushed;
    Weight constant = kNoFlow;
    push_through(first, row, second.constant(c), pushed, constant);
    for (CounterId d = 0; d < n; ++d) out.weight(c, d) = pushed[d];
    out.constant(c) = constant;
  }
  out.outputs() = first.outputs();
  for (const auto& ev : second.outputs()) {
    OutputEvent mapped{ev.counter, {}, kNoFlow};
    push_through(first, ev.weights, ev.constant, mapped.weights, mapped.constant);
    out.outputs().push_back(std::move(mapped));
  }
  return out;
}

namespace {

Natural eval_row(const std::vector<Weight>& row, Weight constant, const std::vector<Natural>& valuation) {
  if (constant == kInfinite) throw UnsupportedError("cannot evaluate an unbounded effect");
  bool any = constant != kNoFlow;
  Natural best = any ? Natural(constant) : Natural(0);
  for (std::size_t d = 0; d < row.size(); ++d) {
    if (row[d] == kNoFlow) continue;
    if (row[d] == kInfinite) throw UnsupportedError("cannot evaluate an unbounded effect");
    Natural v = valuation[d] + row[d];
    if (!any || v > best) best = std::move(v);
    any = true;
  }
  return best;
}

}  // namespace

EffectResult apply(const LoopEffect& e, const std::vector<Natural>& valuation) {
  const std::size_t n = e.counters();
  EffectResult r;
  r.valuation.resize(n);
  std::vector<Weight> row(n);
  for (CounterId c = 0; c < n; ++c) {
    for (CounterId d = 0; d < n; ++d) row[d] = e.weight(c, d);
    r.valuation[c] = eval_row(row, e.constant(c), valuation);
  }
  for (const auto& ev : e.outputs()) r.outputs.emplace_back(ev.counter, eval_row(ev.weights, ev.constant, valuation));
  return r;
}

namespace {

/// Tarjan SCC over the flow graph d -> c (weight(c <- d) != ⊥).
std::vector<std::size_t> flow_sccs(const LoopEffect& e, std::size_t& count) {
  const std::size_t n = e.counters();
  std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0), comp(n, SIZE_MAX);
  std::vector<std::size_t> stack;
  std::vector<bool> on_stack(n, false);
  std::size_t next = 0;
  count = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = next++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (e.weight(static_cast<CounterId>(w), static_cast<CounterId>(v)) == kNoFlow) continue;
      if (index[w] == SIZE_MAX) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      for (;;) {
        std::size_t w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = count;
        if (w == v) break;
      }
      ++count;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == SIZE_MAX) visit(v);
  return comp;
}

/// Counters lying on a positive-weight cycle or receiving an infinite flow.
std::vector<bool> growth_sources(const LoopEffect& e) {
  const std::size_t n = e.counters();
  std::size_t count = 0;
  const auto comp = flow_sccs(e, count);
  std::vector<bool> positive_scc(count, false);
  std::vector<bool> source(n, false);
  for (CounterId c = 0; c < n; ++c) {
    if (e.constant(c) == kInfinite) source[c] = true;
    for (CounterId d = 0; d < n; ++d) {
      const Weight w = e.weight(c, d);
      if (w == kNoFlow) continue;
      if (w == kInfinite) source[c] = true;
      if (comp[c] == comp[d] && w > 0) positive_scc[comp[c]] = true;
    }
  }
  for (CounterId c = 0; c < n; ++c)
    if (positive_scc[comp[c]]) source[c] = true;
  return source;
}

std::vector<bool> forward_closure(const LoopEffect& e, std::vector<bool> seed) {
  const std::size_t n = e.counters();
  std::vector<CounterId> work;
  for (CounterId c = 0; c < n; ++c)
    if (seed[c]) work.push_back(c);
  while (!work.empty()) {
    const CounterId d = work.back();
    work.pop_back();
    for (CounterId c = 0; c < n; ++c) {
      if (seed[c] || e.weight(c, d) == kNoFlow) continue;
      seed[c] = true;
      work.push_back(c);
    }
  }
  return seed;
}

}  // namespace

std::vector<Growth> iterate_classify(const LoopEffect& e) {
  const auto reach = forward_closure(e, growth_sources(e));
  std::vector<Growth> out(e.counters(), Growth::Bounded);
  for (std::size_t c = 0; c < out.size(); ++c)
    if (reach[c]) out[c] = Growth::Unbounded;
  return out;
}

LoopEffect iterate_closure(const LoopEffect& e) {
  const std::size_t n = e.counters();
  // star = sup_{i >= 0} W^i over paths of length <= n, then infinite through positive cycles
  LoopEffect star = LoopEffect::identity(n);
  LoopEffect power = LoopEffect::identity(n);
  LoopEffect weights_only = e;
  weights_only.outputs().clear();
  for (CounterId c = 0; c < n; ++c) weights_only.constant(c) = kNoFlow;
  for (std::size_t i = 0; i < n; ++i) {
    power = compose(power, weights_only);
    for (CounterId c = 0; c < n; ++c)
      for (CounterId d = 0; d < n; ++d) star.weight(c, d) = std::max(star.weight(c, d), power.weight(c, d));
  }
  const auto sources = growth_sources(weights_only);
  for (CounterId z = 0; z < n; ++z) {
    if (!sources[z]) continue;
    for (CounterId c = 0; c < n; ++c) {
      if (star.weight(c, z) == kNoFlow) continue;
      for (CounterId d = 0; d < n; ++d)
        if (star.weight(z, d) != kNoFlow) star.weight(c, d) = kInfinite;
    }
  }
  // constants of e^i are sup_{j < i} W^j b, so their supremum is star ⊗ b
  std::vector<Weight> star_constant(n, kNoFlow);
  for (CounterId c = 0; c < n; ++c)
    for (CounterId d = 0; d < n; ++d)
      star_constant[c] = std::max(star_constant[c], weight_add(star.weight(c, d), e.constant(d)));

  // sup_{i >= 1} e^i = e ∘ star, with the star constants folded in
  LoopEffect plus = LoopEffect::identity(n);
  for (CounterId c = 0; c < n; ++c) {
    plus.constant(c) = e.constant(c);
    for (CounterId x = 0; x < n; ++x) {
      const Weight w = e.weight(c, x);
      if (w == kNoFlow) continue;
      plus.constant(c) = std::max(plus.constant(c), weight_add(w, star_constant[x]));
    }
    for (CounterId d = 0; d < n; ++d) {
      Weight best = kNoFlow;
      for (CounterId x = 0; x < n; ++x) best = std::max(best, weight_add(e.weight(c, x), star.weight(x, d)));
      plus.weight(c, d) = best;
    }
  }
  // an output at iteration i sees the valuation after i-1 iterations, bounded by star
  for (const auto& ev : e.outputs()) {
    OutputEvent bound{ev.counter, std::vector<Weight>(n, kNoFlow), ev.constant};
    for (CounterId x = 0; x < n; ++x) {
      if (ev.weights[x] == kNoFlow) continue;
      bound.constant = std::max(bound.constant, weight_add(ev.weights[x], star_constant[x]));
      for (CounterId d = 0; d < n; ++d)
        bound.weights[d] = std::max(bound.weights[d], weight_add(ev.weights[x], star.weight(x, d)));
    }
    plus.outputs().push_back(std::move(bound));
  }
  return plus;
}

}  // namespace maxreg
