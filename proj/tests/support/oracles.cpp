#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace oracle {

using namespace maxreg;

MaxAutomaton gap() {
  MaxAutomaton a(Alphabet::from_chars("ab"), 0);
  const StateId s = a.add_state("s");
  const CounterId c = a.add_counter("c");
  a.set_transition(s, Letter{0, 0}, Transition{s, {CounterOp::inc(c)}});
  a.set_transition(s, Letter{1, 0}, Transition{s, {CounterOp::out(c), CounterOp::reset(c)}});
  a.set_acceptance(Acceptance::unbounded(c));
  return a;
}

Acceptance random_acceptance(std::mt19937_64& rng, std::size_t counters, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 4);
  const int k = pick(rng);
  if (k <= 1 || counters == 0) {
    const CounterId c = static_cast<CounterId>(std::uniform_int_distribution<std::size_t>(0, counters - 1)(rng));
    return k == 0 ? Acceptance::bounded(c) : Acceptance::unbounded(c);
  }
  auto l = random_acceptance(rng, counters, depth - 1);
  auto r = random_acceptance(rng, counters, depth - 1);
  if (k == 2) return Acceptance::conj(l, r);
  if (k == 3) return Acceptance::disj(l, r);
  return Acceptance::negate(l);
}

MaxAutomaton random_automaton(std::mt19937_64& rng, const RandomShape& shape, const Alphabet& alphabet) {
  MaxAutomaton a(alphabet, shape.tracks);
  for (std::size_t s = 0; s < shape.states; ++s) a.add_state("q" + std::to_string(s));
  for (std::size_t c = 0; c < shape.counters; ++c) a.add_counter("c" + std::to_string(c));
  std::uniform_int_distribution<std::size_t> state(0, shape.states - 1), counter(0, shape.counters - 1),
      nops(0, shape.max_ops), kind(0, shape.with_max ? 3 : 2);
  for (StateId s = 0; s < shape.states; ++s)
    for (std::size_t l = 0; l < a.letters(); ++l) {
      Transition t{static_cast<StateId>(state(rng)), {}};
      for (std::size_t k = nops(rng); k > 0; --k) {
        const auto c = static_cast<CounterId>(counter(rng));
        switch (kind(rng)) {
          case 0: t.ops.push_back(CounterOp::inc(c)); break;
          case 1: t.ops.push_back(CounterOp::reset(c)); break;
          case 2: t.ops.push_back(CounterOp::out(c)); break;
          default: t.ops.push_back(CounterOp::max(c, static_cast<CounterId>(counter(rng)))); break;
        }
      }
      a.set_transition(s, l, std::move(t));
    }
  a.set_acceptance(random_acceptance(rng, shape.counters, 2));
  return a;
}

FiniteWord random_word(std::mt19937_64& rng, const Alphabet& alphabet, unsigned tracks, std::size_t length) {
  FiniteWord w{tracks, {}};
  std::uniform_int_distribution<std::size_t> letter(0, letter_count(alphabet, tracks) - 1);
  for (std::size_t i = 0; i < length; ++i) w.letters.push_back(letter_at(letter(rng), tracks));
  return w;
}

namespace {

void apply(const OpList& ops, std::vector<std::uint64_t>& val, std::vector<std::uint64_t>* best) {
  for (const auto& op : ops) {
    switch (op.kind) {
      case OpKind::Increment: ++val[op.counter]; break;
      case OpKind::Reset: val[op.counter] = 0; break;
      case OpKind::Output:
        if (best) (*best)[op.counter] = std::max((*best)[op.counter], val[op.counter] + 1);
        break;
      case OpKind::MaxInto: val[op.counter] = std::max(val[op.counter], val[op.arg]); break;
      case OpKind::GuardedOutput: throw std::logic_error("oracle: guarded output");
    }
  }
}

}  // namespace

std::vector<bool> doubling_bounded(const MaxAutomaton& a, const LassoWord& w, std::size_t periods) {
  const std::size_t n = a.counter_count();
  std::vector<std::uint64_t> val(n, 0);
  StateId s = a.initial();
  auto run = [&](const FiniteWord& x, std::vector<std::uint64_t>* best) {
    for (Letter l : x.letters) {
      const Transition& t = a.transition(s, l);
      apply(t.ops, val, best);
      s = t.target;
    }
  };
  run(w.u, nullptr);
  // best holds 1 + the largest output, 0 when nothing was output
  std::vector<std::uint64_t> best(n, 0);
  for (std::size_t k = 0; k < periods; ++k) run(w.v, &best);
  const auto first_half = best;
  for (std::size_t k = 0; k < periods; ++k) run(w.v, &best);
  std::vector<bool> bounded(n);
  for (std::size_t c = 0; c < n; ++c) bounded[c] = best[c] == first_half[c];
  return bounded;
}

std::vector<std::uint64_t> ramp_block_maxima(const MaxAutomaton& a, const RampWord& w, std::size_t blocks) {
  const std::size_t n = a.counter_count();
  std::vector<std::uint64_t> val(n, 0), best(n, 0), out;
  StateId s = a.initial();
  auto run = [&](const FiniteWord& x) {
    for (Letter l : x.letters) {
      const Transition& t = a.transition(s, l);
      apply(t.ops, val, &best);
      s = t.target;
    }
  };
  run(w.u);
  for (std::size_t j = 0; j < blocks; ++j) {
    std::fill(best.begin(), best.end(), 0);
    for (std::size_t k = 0; k < w.first_block + j; ++k) run(w.v);
    run(w.w);
    out.insert(out.end(), best.begin(), best.end());
  }
  return out;
}

Verdict doubling_lasso(const MaxAutomaton& a, const LassoWord& w, std::size_t periods) {
  const auto bounded = doubling_bounded(a, w, periods);
  return a.acceptance().eval([&](CounterId c) { return static_cast<bool>(bounded.at(c)); }) ? Verdict::Accept
                                                                                            : Verdict::Reject;
}

bool muller_accepts(const MullerAutomaton& m, const LassoWord& w) {
  StateId s = m.initial;
  for (Letter l : w.u.letters) s = m.next(s, l);
  // iterate v until the boundary state repeats, then collect the cycle
  std::vector<StateId> boundary;
  while (std::find(boundary.begin(), boundary.end(), s) == boundary.end()) {
    boundary.push_back(s);
    for (Letter l : w.v.letters) s = m.next(s, l);
  }
  std::set<StateId> inf;
  const StateId start = s;
  do {
    for (Letter l : w.v.letters) {
      s = m.next(s, l);
      inf.insert(s);
    }
  } while (s != start);
  return std::find(m.family.begin(), m.family.end(), inf) != m.family.end();
}

MullerAutomaton random_muller(std::mt19937_64& rng, std::size_t states, const Alphabet& alphabet) {
  MullerAutomaton m = MullerAutomaton::make(alphabet, 0, states);
  std::uniform_int_distribution<std::size_t> state(0, states - 1);
  for (StateId s = 0; s < states; ++s)
    for (Symbol x = 0; x < alphabet.size(); ++x) m.set(s, Letter{x, 0}, static_cast<StateId>(state(rng)));
  // a random subset of the nonempty subsets of Q
  std::bernoulli_distribution coin(0.4);
  for (std::uint32_t mask = 1; mask < (1u << states); ++mask) {
    if (!coin(rng)) continue;
    std::set<StateId> set;
    for (StateId q = 0; q < states; ++q)
      if ((mask >> q) & 1u) set.insert(q);
    m.family.push_back(std::move(set));
  }
  return m;
}

TransferClass replay_transfer(const OpList& ops, std::size_t counters, CounterId from, CounterId to) {
  constexpr std::uint64_t kBig = 1000;
  std::vector<std::uint64_t> val(counters, 0);
  val[from] = kBig;
  apply(ops, val, nullptr);
  if (val[to] > kBig) return TransferClass::TransferWithIncrement;
  if (val[to] == kBig) return TransferClass::Transfer;
  return TransferClass::None;
}

std::set<StateId> reach_under_some_set(const MaxAutomaton& a, const FiniteWord& prefix) {
  std::set<StateId> out;
  const unsigned last = a.tracks() - 1;
  const std::size_t n = prefix.size();
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    StateId s = a.initial();
    for (std::size_t i = 0; i < n; ++i) {
      Letter l = prefix.letters[i];
      if ((x >> i) & 1u) l.bits |= Bits{1} << last;
      s = a.next(s, l);
    }
    out.insert(s);
  }
  return out;
}

std::vector<std::optional<std::size_t>> max_set_size(const MaxAutomaton& a, const FiniteWord& prefix) {
  std::vector<std::optional<std::size_t>> out(a.state_count());
  const unsigned last = a.tracks() - 1;
  const std::size_t n = prefix.size();
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    StateId s = a.initial();
    for (std::size_t i = 0; i < n; ++i) {
      Letter l = prefix.letters[i];
      if ((x >> i) & 1u) l.bits |= Bits{1} << last;
      s = a.next(s, l);
    }
    const auto size = static_cast<std::size_t>(std::popcount(x));
    if (!out[s] || *out[s] < size) out[s] = size;
  }
  return out;
}

namespace {

bool contains(const FiniteWord& w, maxreg::Symbol symbol) {
  return std::any_of(w.letters.begin(), w.letters.end(), [&](maxreg::Letter l) { return l.symbol == symbol; });
}

}  // namespace

bool infinitely_often(const maxreg::InfiniteWord& w, maxreg::Symbol symbol) {
  if (const auto* lasso = std::get_if<LassoWord>(&w)) return contains(lasso->v, symbol);
  const auto& ramp = std::get<RampWord>(w);
  return contains(ramp.v, symbol) || contains(ramp.w, symbol);
}

bool unbounded_a_blocks(const maxreg::InfiniteWord& w) {
  const FiniteWord& v = std::visit([](const auto& x) -> const FiniteWord& { return x.v; }, w);
  return std::all_of(v.letters.begin(), v.letters.end(), [](maxreg::Letter l) { return l.symbol == 0; });
}

bool eval_finite(const maxreg::Formula& f, const FiniteWord& w, const Alphabet& alphabet,
                 std::map<std::string, std::uint32_t> sets) {
  using K = maxreg::FormulaKind;
  const std::size_t n = w.size();
  auto mask = [&](std::size_t i) { return sets.at(f.vars[i]); };
  auto all_letter = [&](std::uint32_t m) {
    const auto sym = alphabet.find(f.symbol);
    for (std::size_t p = 0; p < n; ++p)
      if ((m >> p & 1u) && (!sym || w.letters[p].symbol != *sym)) return false;
    return true;
  };
  auto sub = [](std::uint32_t x, std::uint32_t y) { return (x & ~y) == 0; };
  auto eval = [&](const maxreg::FormulaPtr& g, const std::string& var, std::uint32_t m) {
    auto inner = sets;
    if (!var.empty()) inner[var] = m;
    return eval_finite(*g, w, alphabet, std::move(inner));
  };
  switch (f.kind) {
    case K::True: return true;
    case K::False: return false;
    case K::In: return sub(mask(0), mask(1));
    case K::Le: return mask(0) <= mask(1);  // singletons: position order is mask order
    case K::Letter: return all_letter(mask(0));
    case K::Sing: return std::popcount(mask(0)) == 1;
    case K::Sub: return sub(mask(0), mask(1));
    case K::Before: {
      const std::uint32_t x = mask(0), y = mask(1);
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q <= p; ++q)
          if ((x >> p & 1u) && (y >> q & 1u)) return false;
      return true;
    }
    case K::LetterAll: return all_letter(mask(0));
    case K::Not: return !eval(f.children[0], "", 0);
    case K::And: return eval(f.children[0], "", 0) && eval(f.children[1], "", 0);
    case K::Or: return eval(f.children[0], "", 0) || eval(f.children[1], "", 0);
    case K::Implies: return !eval(f.children[0], "", 0) || eval(f.children[1], "", 0);
    case K::Exists:
    case K::Forall: {
      const bool all = f.kind == K::Forall;
      for (std::size_t p = 0; p < n; ++p)
        if (eval(f.children[0], f.vars[0], 1u << p) != all) return !all;
      return all;
    }
    case K::ExistsFin:
      for (std::uint32_t m = 0; m < (1u << n); ++m)
        if (eval(f.children[0], f.vars[0], m)) return true;
      return false;
    case K::Unbounding: throw std::logic_error("eval_finite: no finite reading of U");
  }
  return false;
}

maxreg::FormulaPtr random_formula(std::mt19937_64& rng, std::size_t quantifiers,
                                  const std::vector<std::string>& free_sets) {
  using K = maxreg::FormulaKind;
  std::vector<std::string> fo;
  std::function<maxreg::FormulaPtr(std::size_t, int)> gen = [&](std::size_t left, int depth) -> maxreg::FormulaPtr {
    std::uniform_int_distribution<int> pick(0, 9);
    const int r = pick(rng);
    if (left > 0 && (r < 3 || fo.empty())) {
      const std::string x = "x" + std::to_string(fo.size());
      fo.push_back(x);
      auto body = gen(left - 1, depth);
      fo.pop_back();
      return maxreg::make_quantifier(r % 2 ? K::Exists : K::Forall, x, body);
    }
    if (depth > 0 && r < 7) {
      static constexpr K ops[] = {K::And, K::Or, K::Implies};
      if (r == 6) return maxreg::make_not(gen(left, depth - 1));
      const K op = ops[r % 3];
      // quantifiers go to one side only, keeping the total in check
      const std::size_t split = std::uniform_int_distribution<std::size_t>(0, left)(rng);
      auto lhs = gen(split, depth - 1);
      return maxreg::make_binary(op, lhs, gen(left - split, depth - 1));
    }
    auto any_fo = [&] { return fo[std::uniform_int_distribution<std::size_t>(0, fo.size() - 1)(rng)]; };
    switch (std::uniform_int_distribution<int>(0, free_sets.empty() ? 1 : 2)(rng)) {
      case 0: return maxreg::make_atom(K::Letter, {any_fo()}, pick(rng) % 2 ? "a" : "b");
      case 1: return maxreg::make_atom(K::Le, {any_fo(), any_fo()});
      default:
        return maxreg::make_atom(K::In, {any_fo(), free_sets[std::uniform_int_distribution<std::size_t>(
                                                        0, free_sets.size() - 1)(rng)]});
    }
  };
  // atoms need a first-order variable in scope, so start with a quantifier
  if (quantifiers == 0) return maxreg::make_constant(true);
  return gen(quantifiers, 3);
}

}  // namespace oracle
