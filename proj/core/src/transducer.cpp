#include "maxreg/transducer.hpp"

#include <unordered_map>

#include "hashing.hpp"
#include "maxreg/errors.hpp"

namespace maxreg {

Transducer Transducer::identity(const Alphabet& alphabet, unsigned tracks) {
  Transducer t;
  t.alphabet = alphabet;
  t.tracks = tracks;
  t.states = 1;
  t.output_letters = t.letters();
  for (std::size_t l = 0; l < t.letters(); ++l) {
    t.next.push_back(0);
    t.output.push_back(l);
  }
  return t;
}

MaxAutomaton compose_with_transducer(const MaxAutomaton& checker, const Transducer& t, std::size_t state_budget) {
  if (checker.letters() != t.output_letters)
    throw InputError("compose_with_transducer: checker alphabet differs from the transducer output alphabet");
  MaxAutomaton out(t.alphabet, t.tracks);
  for (CounterId c = 0; c < checker.counter_count(); ++c) out.add_counter(checker.counter_name(c));
  std::unordered_map<std::uint64_t, StateId> ids;
  std::vector<std::pair<StateId, StateId>> pairs;
  auto id_of = [&](StateId ts, StateId cs) {
    const std::uint64_t key = (std::uint64_t{ts} << 32) | cs;
    auto [it, fresh] = ids.emplace(key, static_cast<StateId>(pairs.size()));
    if (fresh) {
      if (pairs.size() >= state_budget) throw BudgetExceeded("transducer composition exceeds the state budget");
      pairs.emplace_back(ts, cs);
      out.add_state(std::to_string(ts) + "," + checker.state_name(cs));
    }
    return it->second;
  };
  out.set_initial(id_of(t.initial, checker.initial()));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [ts, cs] = pairs[k];
    for (std::size_t l = 0; l < t.letters(); ++l) {
      const std::size_t i = ts * t.letters() + l;
      const Transition& ct = checker.transition(cs, t.output[i]);
      const StateId target = id_of(t.next[i], ct.target);
      out.set_transition(static_cast<StateId>(k), l, Transition{target, ct.ops});
    }
  }
  out.set_acceptance(checker.acceptance());
  return out;
}

SpanningTransducer::SpanningTransducer(const MaxAutomaton& a, std::size_t state_budget)
    : n_(a.state_count()), letters_(a.letters()) {
  if (n_ == 0) throw InputError("spanning transducer of an automaton without states");
  if (n_ > 64) throw BudgetExceeded("spanning transducer needs at most 64 states, got " + std::to_string(n_));
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, detail::VectorHash> ids;
  std::vector<std::uint32_t> perm(n_);
  for (std::size_t i = 0; i < n_; ++i) perm[i] = static_cast<std::uint32_t>(i);
  ids.emplace(perm, 0);
  perms_ = perm;

  std::vector<std::uint32_t> after(n_);
  std::vector<bool> taken(n_);
  for (std::size_t k = 0; k < perms_.size() / n_; ++k) {
    for (std::size_t l = 0; l < letters_; ++l) {
      std::fill(taken.begin(), taken.end(), false);
      Bits kept = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        const StateId t = a.transition(perms_[k * n_ + i], l).target;
        if (!taken[t]) {
          taken[t] = true;
          after[i] = t;
          kept |= Bits{1} << i;
        } else {
          after[i] = kNoState;
        }
      }
      // collided coordinates take the missing states in ascending order
      std::size_t missing = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (after[i] != kNoState) continue;
        while (taken[missing]) ++missing;
        taken[missing] = true;
        after[i] = static_cast<StateId>(missing);
      }
      auto [it, fresh] = ids.emplace(after, static_cast<std::uint32_t>(ids.size()));
      if (fresh) {
        if (ids.size() > state_budget) throw BudgetExceeded("spanning transducer exceeds the state budget");
        perms_.insert(perms_.end(), after.begin(), after.end());
      }
      next_.push_back(it->second);
      kept_.push_back(kept);
    }
  }
}

std::string SpanChecker::describe(const Key& key) const {
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) out += (i ? "." : "") + std::to_string(key[i]);
  return out;
}

MaxAutomaton compose_with_transducers(const SpanChecker& checker, const std::vector<const SpanningTransducer*>& ts,
                                      const Alphabet& alphabet, unsigned tracks, std::size_t state_budget) {
  MaxAutomaton out(alphabet, tracks);
  const std::size_t letters = out.letters();
  for (const auto* t : ts)
    if (t->letters() != letters) throw InputError("spanning transducer reads a different alphabet");
  for (const auto& name : checker.counter_names()) out.add_counter(name);

  using Key = SpanChecker::Key;
  std::unordered_map<Key, StateId, detail::VectorHash> ids;
  std::vector<Key> keys;
  const std::size_t m = ts.size();
  auto id_of = [&](Key key) {
    auto [it, fresh] = ids.emplace(key, static_cast<StateId>(keys.size()));
    if (fresh) {
      if (keys.size() >= state_budget) throw BudgetExceeded("product exceeds the state budget of " + std::to_string(state_budget));
      out.add_state(checker.describe(Key(key.begin() + m, key.end())));
      keys.push_back(std::move(key));
    }
    return it->second;
  };
  Key start(m, 0);
  const Key init = checker.initial();
  start.insert(start.end(), init.begin(), init.end());
  out.set_initial(id_of(start));

  std::vector<SpanStep> steps(m);
  Key next_key;
  for (std::size_t s = 0; s < keys.size(); ++s) {
    for (std::size_t l = 0; l < letters; ++l) {
      next_key.assign(m, 0);
      for (std::size_t j = 0; j < m; ++j) {
        const std::uint32_t k = keys[s][j];
        const std::uint32_t k2 = ts[j]->next(k, l);
        steps[j] = SpanStep{ts[j]->permutation(k), ts[j]->permutation(k2), ts[j]->kept(k, l)};
        next_key[j] = k2;
      }
      OpList ops;
      const Key inner = checker.step(Key(keys[s].begin() + m, keys[s].end()), l, steps, ops);
      next_key.insert(next_key.end(), inner.begin(), inner.end());
      const StateId target = id_of(next_key);
      out.set_transition(static_cast<StateId>(s), l, Transition{target, std::move(ops)});
    }
  }
  out.set_acceptance(checker.acceptance());
  return out;
}

}  // namespace maxreg
