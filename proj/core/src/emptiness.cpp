#include "maxreg/emptiness.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "maxreg/errors.hpp"
#include "maxreg/transfer.hpp"
#include "maxreg/uautomaton.hpp"

namespace maxreg {

const char* to_string(EmptinessStatus s) {
  switch (s) {
    case EmptinessStatus::Empty: return "empty";
    case EmptinessStatus::Nonempty: return "nonempty";
    case EmptinessStatus::Unknown: return "unknown";
  }
  return "?";
}

namespace {

/// Strongly connected components of the state graph restricted to states
/// reachable from the initial state; comp == SIZE_MAX for unreachable ones.
std::vector<std::size_t> state_sccs(const MaxAutomaton& a, std::size_t& count) {
  const std::size_t n = a.state_count();
  std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0), comp(n, SIZE_MAX);
  std::vector<bool> on_stack(n, false);
  std::vector<StateId> stack;
  std::size_t next = 0;
  count = 0;
  std::vector<std::pair<StateId, std::size_t>> frames{{a.initial(), 0}};
  index[a.initial()] = low[a.initial()] = next++;
  stack.push_back(a.initial());
  on_stack[a.initial()] = true;
  while (!frames.empty()) {
    auto& [v, cursor] = frames.back();
    if (cursor < a.letters()) {
      const StateId w = a.transition(v, cursor++).target;
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
    const StateId done = v;
    frames.pop_back();
    if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
    if (low[done] == index[done]) {
      for (;;) {
        const StateId w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = count;
        if (w == done) break;
      }
      ++count;
    }
  }
  return comp;
}

/// Odometer over words of a fixed length.
bool next_word(std::vector<std::size_t>& digits, std::size_t base) {
  for (auto& d : digits) {
    if (++d < base) return true;
    d = 0;
  }
  return false;
}

/// All words of length lo..hi, shortest first.
std::vector<FiniteWord> words_up_to(const MaxAutomaton& a, std::size_t lo, std::size_t hi, std::size_t cap) {
  std::vector<FiniteWord> out;
  for (std::size_t len = lo; len <= hi && out.size() < cap; ++len) {
    std::vector<std::size_t> digits(len, 0);
    do {
      FiniteWord w{a.tracks(), {}};
      for (std::size_t d : digits) w.letters.push_back(letter_at(d, a.tracks()));
      out.push_back(std::move(w));
    } while (out.size() < cap && next_word(digits, a.letters()));
  }
  return out;
}

StateId run_from(const MaxAutomaton& a, StateId s, const FiniteWord& w) {
  for (Letter l : w.letters) s = a.next(s, l);
  return s;
}

std::string letters_key(const FiniteWord& w) {
  std::string k;
  for (Letter l : w.letters) k += std::to_string(letter_index(l, w.tracks)) + ",";
  return k;
}

}  // namespace

EmptinessResult emptiness_search(const MaxAutomaton& a, const EmptinessOptions& options) {
  if (const auto report = validate(a); !report.ok()) throw InputError("invalid automaton: " + report.problems.front());
  EmptinessResult r;
  const Acceptance f = a.acceptance().simplified();
  if (f.as_constant() == false || f.semantic_constant() == false) {
    r.status = EmptinessStatus::Empty;
    r.reason = "acceptance condition is unsatisfiable";
    return r;
  }

  auto accept = [&](InfiniteWord w) {
    const MembershipResult m = membership(a, w, options.ramp);
    ++r.candidates;
    if (m.verdict != Verdict::Accept) return false;
    r.status = EmptinessStatus::Nonempty;
    r.certificate = format_word_spec(w, a.alphabet()) + " " + format_atoms(a, m);
    r.witness = std::move(w);
    return true;
  };

  const std::size_t cap = options.budget + 1;
  const auto mentioned = f.counters();
  std::set<std::string> ramps_seen;
  // ramps whose period increments some counter mentioned by the acceptance
  auto try_ramps = [&](std::size_t max_u, std::size_t max_v, std::size_t max_w) {
    const auto us = words_up_to(a, 0, max_u, cap);
    const auto vs = words_up_to(a, 1, max_v, cap);
    const auto ws = words_up_to(a, 1, max_w, cap);
    for (const auto& u : us) {
      const StateId s = run_from(a, a.initial(), u);
      for (const auto& v : vs) {
        TransferMatrix m = TransferMatrix::identity(a.counter_count());
        StateId x = s;
        for (Letter l : v.letters) {
          const Transition& t = a.transition(x, l);
          m = compose_transfer(m, transfer_of(t.ops, a.counter_count()));
          x = t.target;
        }
        const bool pumps = std::any_of(mentioned.begin(), mentioned.end(), [&](CounterId c) {
          return m.at(c, c) == TransferClass::TransferWithIncrement;
        });
        if (!pumps) continue;
        for (const auto& w : ws) {
          if (!ramps_seen.insert(std::to_string(s) + "|" + letters_key(v) + "|" + letters_key(w)).second) continue;
          if (r.candidates >= options.budget) return false;
          if (accept(RampWord{u, v, w, 1})) return true;
        }
      }
    }
    return false;
  };

  const auto prefixes = words_up_to(a, 0, options.max_prefix, cap);
  const auto periods = words_up_to(a, 1, options.max_period, cap);
  std::set<std::pair<StateId, std::string>> tried;
  // lassos by total length, each (state after u, v) pair once
  auto try_lassos = [&](std::size_t max_total) {
    for (std::size_t total = 1; total <= std::min(max_total, options.max_prefix + options.max_period); ++total) {
      for (const auto& u : prefixes) {
        if (u.size() >= total) continue;
        const StateId s = run_from(a, a.initial(), u);
        for (const auto& v : periods) {
          if (u.size() + v.size() != total) continue;
          if (!tried.emplace(s, letters_key(v)).second) continue;
          if (r.candidates >= options.budget) return false;
          if (accept(LassoWord{u, v})) return true;
        }
      }
    }
    return false;
  };

  // cheap candidates before the per-counter analysis
  if (try_ramps(0, 1, 1) || try_lassos(2)) return r;

  // counters that stay bounded on every run (no arbitrarily long d-traces)
  std::vector<std::optional<bool>> forced(a.counter_count());
  std::vector<UWitness> growth_witnesses;
  const std::size_t ustates = a.state_count() * (1 + 2 * a.counter_count() * a.counter_count());
  if (ustates <= options.max_uautomaton_states) {
    for (CounterId d : f.counters()) {
      auto w = uauto_nonempty(unboundedness_uautomaton(a, d));
      if (w) growth_witnesses.push_back(std::move(*w));
      else forced[d] = true;
    }
  }
  if (evaluate_partial(f, forced) == Verdict::Reject) {
    r.status = EmptinessStatus::Empty;
    r.reason = "every counter that acceptance needs unbounded is bounded on all runs";
    return r;
  }

  // a run settles in one component; counters not output inside it are bounded
  std::size_t comps = 0;
  const auto comp = state_sccs(a, comps);
  std::vector<bool> cyclic(comps, false);
  std::vector<std::set<CounterId>> emitted(comps);
  for (StateId s = 0; s < a.state_count(); ++s) {
    if (comp[s] == SIZE_MAX) continue;
    for (std::size_t l = 0; l < a.letters(); ++l) {
      const Transition& t = a.transition(s, l);
      if (comp[t.target] != comp[s]) continue;
      cyclic[comp[s]] = true;
      for (const auto& op : t.ops)
        if (op.kind == OpKind::Output) emitted[comp[s]].insert(op.counter);
    }
  }
  bool any_open = false;
  for (std::size_t k = 0; k < comps && !any_open; ++k) {
    if (!cyclic[k]) continue;
    auto local = forced;
    for (CounterId c = 0; c < local.size(); ++c)
      if (!emitted[k].contains(c)) local[c] = true;
    if (evaluate_partial(f, local) != Verdict::Reject) any_open = true;
  }
  if (!any_open) {
    r.status = EmptinessStatus::Empty;
    r.reason = "acceptance is false in every reachable cycle of the state graph";
    return r;
  }

  for (const auto& g : growth_witnesses) {
    if (r.candidates >= options.budget) break;
    if (accept(g.word)) return r;
  }
  if (try_lassos(SIZE_MAX) || try_ramps(options.max_prefix, options.max_period, options.max_suffix)) return r;

  r.status = EmptinessStatus::Unknown;
  r.reason = "no witness found within " + std::to_string(r.candidates) + " candidates";
  return r;
}

bool check_certificate(const MaxAutomaton& a, const EmptinessResult& r, const RampOptions& options) {
  if (r.status != EmptinessStatus::Nonempty || !r.witness) return false;
  return membership(a, *r.witness, options).verdict == Verdict::Accept;
}

}  // namespace maxreg
