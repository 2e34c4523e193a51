#include "maxreg/membership.hpp"

#include <numeric>
#include <unordered_map>

#include "maxreg/errors.hpp"
#include "maxreg/loop_effect.hpp"

namespace maxreg {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Accept: return "accept";
    case Verdict::Reject: return "reject";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

namespace {

void check_input(const MaxAutomaton& a, unsigned tracks) {
  if (tracks != a.tracks())
    throw InputError("word has " + std::to_string(tracks) + " tracks, automaton expects " + std::to_string(a.tracks()));
  if (a.has_guarded_ops()) throw UnsupportedError("membership on an automaton with guarded outputs");
}

StateId run_from(const MaxAutomaton& a, StateId s, const FiniteWord& word) {
  for (Letter l : word.letters) {
    if (l.symbol >= a.alphabet().size()) throw InputError("letter symbol outside alphabet");
    s = a.next(s, l);
    if (s == kNoState) throw InputError("transition undefined");
  }
  return s;
}

StateId extend_along(const MaxAutomaton& a, StateId s, const FiniteWord& word, LoopEffect& e) {
  for (Letter l : word.letters) {
    const Transition& t = a.transition(s, l);
    extend(e, t.ops);
    s = t.target;
  }
  return s;
}

/// Marks c unbounded when some c-output event is fed by a growing counter.
void mark_fed_by_growth(const LoopEffect& events, const std::vector<Growth>& growth, std::vector<bool>& unbounded) {
  for (const auto& ev : events.outputs()) {
    if (unbounded[ev.counter]) continue;
    for (std::size_t d = 0; d < growth.size(); ++d) {
      if (ev.weights[d] != kNoFlow && growth[d] == Growth::Unbounded) {
        unbounded[ev.counter] = true;
        break;
      }
    }
  }
}

/// v-orbit of a state: seq[i] = v^i(s); seq[lead + period] == seq[lead].
struct Orbit {
  std::vector<StateId> seq;
  std::size_t lead = 0;
  std::size_t period = 1;

  StateId at(std::size_t e) const { return e < lead ? seq[e] : seq[lead + (e - lead) % period]; }
};

}  // namespace

Verdict evaluate_partial(const Acceptance& f, const std::vector<std::optional<bool>>& bounded) {
  const Acceptance g = f.substitute([&](CounterId c) -> std::optional<bool> {
    return c < bounded.size() ? bounded[c] : std::nullopt;
  });
  const auto value = g.semantic_constant();
  if (!value) return Verdict::Unknown;
  return *value ? Verdict::Accept : Verdict::Reject;
}

MembershipResult lasso_membership(const MaxAutomaton& a, const LassoWord& w) {
  check_input(a, w.u.tracks);
  if (w.v.empty()) throw InputError("lasso period is empty");
  if (w.v.tracks != w.u.tracks) throw InputError("lasso parts have different track widths");

  StateId s = run_from(a, a.initial(), w.u);
  std::unordered_map<StateId, std::size_t> seen;
  std::vector<StateId> boundary;
  while (!seen.contains(s)) {
    seen.emplace(s, boundary.size());
    boundary.push_back(s);
    s = run_from(a, s, w.v);
  }
  const std::size_t cycle_start = seen.at(s);
  const std::size_t n = a.counter_count();
  LoopEffect cycle = LoopEffect::identity(n);
  StateId st = boundary[cycle_start];
  for (std::size_t k = cycle_start; k < boundary.size(); ++k) st = extend_along(a, st, w.v, cycle);

  const auto growth = iterate_classify(cycle);
  std::vector<bool> unbounded(n, false);
  mark_fed_by_growth(cycle, growth, unbounded);

  MembershipResult r;
  r.bounded.resize(n);
  for (std::size_t c = 0; c < n; ++c) r.bounded[c] = !unbounded[c];
  r.verdict = a.acceptance().eval([&](CounterId c) { return !unbounded.at(c); }) ? Verdict::Accept : Verdict::Reject;
  return r;
}

MembershipResult ramp_certify(const MaxAutomaton& a, const RampWord& w, const RampOptions& options) {
  check_input(a, w.u.tracks);
  if (w.v.empty()) throw InputError("ramp period is empty");
  if (w.v.tracks != w.u.tracks || w.w.tracks != w.u.tracks) throw InputError("ramp parts have different track widths");
  const std::size_t n = a.counter_count();
  MembershipResult r;
  r.bounded.assign(n, std::nullopt);

  std::unordered_map<StateId, StateId> vnext_cache;
  auto vnext = [&](StateId s) {
    auto it = vnext_cache.find(s);
    if (it != vnext_cache.end()) return it->second;
    const StateId t = run_from(a, s, w.v);
    vnext_cache.emplace(s, t);
    return t;
  };
  std::unordered_map<StateId, Orbit> orbits;
  auto orbit = [&](StateId s) -> const Orbit& {
    auto it = orbits.find(s);
    if (it != orbits.end()) return it->second;
    Orbit o;
    std::unordered_map<StateId, std::size_t> pos;
    StateId x = s;
    while (!pos.contains(x)) {
      pos.emplace(x, o.seq.size());
      o.seq.push_back(x);
      x = vnext(x);
    }
    o.lead = pos.at(x);
    o.period = o.seq.size() - o.lead;
    o.seq.push_back(x);
    return orbits.emplace(s, std::move(o)).first->second;
  };

  // block j starts in state b_j and reads v^{e_j} w with e_j = first_block + j
  std::vector<StateId> starts;
  std::vector<std::size_t> exps;
  std::size_t modulus = 1;
  std::size_t threshold = 0;
  StateId b = run_from(a, a.initial(), w.u);
  for (std::size_t j = 0; j < options.horizon; ++j) {
    const std::size_t e = w.first_block + j;
    const Orbit& o = orbit(b);
    modulus = std::lcm(modulus, o.period);
    if (modulus > options.ceiling) {
      r.note = "lcm of v-cycle lengths exceeds the ceiling";
      return r;
    }
    threshold = std::max(threshold, o.lead + o.period);
    starts.push_back(b);
    exps.push_back(e);
    b = run_from(a, o.at(e), w.w);
  }

  // first j1 < j2 with equal (b, e mod M) and e_{j1} past every lead + period
  std::size_t j1 = 0, period = 0;
  {
    std::map<std::pair<StateId, std::size_t>, std::size_t> first_seen;
    for (std::size_t j = 0; j < starts.size() && period == 0; ++j) {
      if (exps[j] < threshold) continue;
      const auto key = std::make_pair(starts[j], exps[j] % modulus);
      auto [it, fresh] = first_seen.emplace(key, j);
      if (!fresh) {
        j1 = it->second;
        period = j - j1;
      }
    }
  }
  if (period == 0 || period % modulus != 0) {
    // the modulus may have grown after j1 was recorded; only a multiple of M is a proof
    if (period != 0) period = 0;
    r.note = "no block-state period within the horizon";
    return r;
  }
  // the window is a simulated sanity check: further blocks repeat the recorded keys
  {
    StateId x = starts[j1 + period];
    for (std::size_t k = 0; k < options.window * period; ++k) {
      const std::size_t j = j1 + period + k;
      const std::size_t ref = j1 + k % period;
      if (x != starts[ref]) throw std::logic_error("ramp_certify: block periodicity violated");
      x = run_from(a, orbit(x).at(w.first_block + j), w.w);
    }
  }

  std::vector<bool> unbounded(n, false);
  LoopEffect super = LoopEffect::identity(n);
  LoopEffect super_low = LoopEffect::identity(n);
  for (std::size_t res = 0; res < period; ++res) {
    const std::size_t j = j1 + res;
    const Orbit& o = orbit(starts[j]);
    const std::size_t e = exps[j];
    const std::size_t rem = (e - o.lead) % o.period;
    const StateId entry = o.seq[o.lead];

    LoopEffect pre = LoopEffect::identity(n);
    StateId x = starts[j];
    for (std::size_t k = 0; k < o.lead; ++k) x = extend_along(a, x, w.v, pre);
    LoopEffect cycle = LoopEffect::identity(n);
    x = entry;
    for (std::size_t k = 0; k < o.period; ++k) x = extend_along(a, x, w.v, cycle);
    LoopEffect post = LoopEffect::identity(n);
    x = entry;
    for (std::size_t k = 0; k < rem; ++k) x = extend_along(a, x, w.v, post);
    extend_along(a, x, w.w, post);

    // lower bounds: growth inside the cycle, and growth of the cycle count across super-blocks
    mark_fed_by_growth(cycle, iterate_classify(cycle), unbounded);
    LoopEffect per_super = LoopEffect::identity(n);
    for (std::size_t k = 0; k < period / o.period; ++k) per_super = compose(per_super, cycle);
    mark_fed_by_growth(post, iterate_classify(per_super), unbounded);

    // upper bound: any number (>= 1) of cycle turns
    const LoopEffect block = compose(compose(pre, iterate_closure(cycle)), post);
    super = compose(super, block);

    // lower bound: further turns never lower a counter the cycle carries over,
    // and every other counter is at least 0
    OpList floor;
    for (CounterId c = 0; c < n; ++c)
      if (cycle.weight(c, c) == kNoFlow) floor.push_back(CounterOp::reset(c));
    super_low = compose(super_low, compose(compose(pre, compose(cycle, effect_of(floor, n))), post));
  }
  // growth across super-blocks that even the lower bound shows
  mark_fed_by_growth(super_low, iterate_classify(super_low), unbounded);

  const auto growth = iterate_classify(super);
  std::vector<bool> certified_bounded(n, true);
  for (const auto& ev : super.outputs()) {
    bool ok = ev.constant != kInfinite;
    for (std::size_t d = 0; d < n && ok; ++d) {
      if (ev.weights[d] == kNoFlow) continue;
      if (ev.weights[d] == kInfinite || growth[d] == Growth::Unbounded) ok = false;
    }
    if (!ok) certified_bounded[ev.counter] = false;
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (unbounded[c]) r.bounded[c] = false;
    else if (certified_bounded[c]) r.bounded[c] = true;
  }
  r.verdict = evaluate_partial(a.acceptance(), r.bounded);
  if (r.verdict == Verdict::Unknown) r.note = "some acceptance atoms are undetermined on this ramp";
  return r;
}

MembershipResult membership(const MaxAutomaton& a, const InfiniteWord& w, const RampOptions& options) {
  if (const auto* lasso = std::get_if<LassoWord>(&w)) return lasso_membership(a, *lasso);
  return ramp_certify(a, std::get<RampWord>(w), options);
}

std::string format_atoms(const MaxAutomaton& a, const MembershipResult& r) {
  std::string out;
  for (std::size_t c = 0; c < r.bounded.size(); ++c) {
    if (!out.empty()) out += ' ';
    out += a.counter_name(static_cast<CounterId>(c)) + "=";
    out += !r.bounded[c] ? "unknown" : (*r.bounded[c] ? "bounded" : "unbounded");
  }
  return out;
}

}  // namespace maxreg
