#include <random>

#include "doctest.h"
#include "maxreg/boolean_ops.hpp"
#include "maxreg/errors.hpp"
#include "maxreg/loop_effect.hpp"
#include "maxreg/muller.hpp"
#include "maxreg/transfer.hpp"
#include "oracles.hpp"

using namespace maxreg;

namespace {

using TC = TransferClass;

const Alphabet kAB = Alphabet::from_chars("ab");

// every op on two counters, including max of a counter into itself
std::vector<CounterOp> all_ops() {
  std::vector<CounterOp> ops;
  for (CounterId c = 0; c < 2; ++c) {
    ops.push_back(CounterOp::inc(c));
    ops.push_back(CounterOp::reset(c));
    ops.push_back(CounterOp::out(c));
    for (CounterId d = 0; d < 2; ++d) ops.push_back(CounterOp::max(c, d));
  }
  return ops;
}

OpList random_ops(std::mt19937_64& rng, std::size_t n, std::size_t max_len) {
  const auto pool = all_ops();
  std::uniform_int_distribution<std::size_t> len(0, max_len), pick(0, pool.size() - 1);
  OpList ops;
  for (std::size_t k = len(rng); k > 0; --k) {
    auto op = pool[pick(rng)];
    op.counter %= n;
    op.arg %= n;
    ops.push_back(op);
  }
  return ops;
}

}  // namespace

TEST_CASE("transfer_of follows the rules") {
  const auto inc = transfer_of({CounterOp::inc(0)}, 2);
  CHECK(inc.at(0, 0) == TC::TransferWithIncrement);
  CHECK(inc.at(1, 1) == TC::Transfer);
  CHECK(inc.at(0, 1) == TC::None);

  const auto reset = transfer_of({CounterOp::reset(0)}, 2);
  CHECK(reset.at(0, 0) == TC::None);
  CHECK(reset.at(1, 1) == TC::Transfer);

  const auto max = transfer_of({CounterOp::max(0, 1)}, 2);
  CHECK(max.at(1, 0) == TC::Transfer);
  CHECK(max.at(0, 0) == TC::Transfer);
  CHECK(max.at(1, 1) == TC::Transfer);
  CHECK(max.at(0, 1) == TC::None);

  CHECK(transfer_of({}, 2) == TransferMatrix::identity(2));
  CHECK_THROWS_AS(transfer_of({CounterOp::guarded_out(0, 0)}, 1), UnsupportedError);
}

TEST_CASE("compose_transfer") {
  const auto ti = transfer_of({CounterOp::inc(0)}, 2);
  const auto t = transfer_of({CounterOp::max(1, 0)}, 2);
  CHECK(compose_transfer(ti, t).at(0, 1) == TC::TransferWithIncrement);
  CHECK(compose_transfer(TransferMatrix::identity(2), t) == t);
  CHECK(compose_transfer(ti, transfer_of({CounterOp::reset(0)}, 2)).at(0, 0) == TC::None);

  std::mt19937_64 rng(31);
  for (int round = 0; round < 1000; ++round) {
    const std::size_t n = 1 + round % 2;
    const auto s1 = random_ops(rng, n, 5), s2 = random_ops(rng, n, 5);
    OpList both = s1;
    both.insert(both.end(), s2.begin(), s2.end());
    CHECK(transfer_of(both, n) == compose_transfer(transfer_of(s1, n), transfer_of(s2, n)));
  }
}

TEST_CASE("transfer classes match replayed values and loop effects") {
  const auto pool = all_ops();
  std::size_t sequences = 0, mismatches = 0;
  std::vector<std::size_t> index;
  for (std::size_t len = 0; len <= 4; ++len) {
    index.assign(len, 0);
    for (;;) {
      OpList ops;
      for (auto i : index) ops.push_back(pool[i]);
      const auto m = transfer_of(ops, 2);
      const auto e = effect_of(ops, 2);
      for (CounterId c = 0; c < 2; ++c)
        for (CounterId d = 0; d < 2; ++d) {
          const TC expected = oracle::replay_transfer(ops, 2, c, d);
          const Weight w = e.weight(d, c);
          const TC bridged = w == kNoFlow ? TC::None : (w >= 1 ? TC::TransferWithIncrement : TC::Transfer);
          if (m.at(c, d) != expected || bridged != expected) ++mismatches;
        }
      ++sequences;
      std::size_t k = 0;
      while (k < len && ++index[k] == pool.size()) index[k++] = 0;
      if (k == len) break;
    }
  }
  CHECK(sequences == 1 + 10 + 100 + 1000 + 10000);
  CHECK(mismatches == 0);
}

TEST_CASE("transfer_reachability") {
  const auto g = oracle::gap();
  const auto r = transfer_reachability(g);
  CHECK(r.reachable(0, 0));
  CHECK(r.best(0, 0).at(0, 0) == TC::TransferWithIncrement);
  // the b-step alone kills the flow
  CHECK(transfer_of(g.transition(0, Letter{1, 0}).ops, 1).at(0, 0) == TC::None);

  MaxAutomaton quiet(kAB, 0);
  const auto s = quiet.add_state("s");
  quiet.add_counter("c");
  quiet.add_counter("d");
  quiet.set_transition(s, Letter{0, 0}, Transition{s, {}});
  quiet.set_transition(s, Letter{1, 0}, Transition{s, {}});
  CHECK(transfer_reachability(quiet).best(0, 0) == TransferMatrix::identity(2));
}

TEST_CASE("verify_dtrace") {
  const auto g = oracle::gap();
  const auto aaab = parse_finite_word("aaab", kAB);
  CHECK(verify_dtrace(g, aaab, DTrace{{0, 1, 2}, 3, 0, 0}));
  CHECK_THROWS_AS(verify_dtrace(g, aaab, DTrace{{}, 3, 0, 0}), InputError);
  CHECK_THROWS_AS(verify_dtrace(g, aaab, DTrace{{0, 1}, 9, 0, 0}), InputError);
  CHECK_THROWS_AS(verify_dtrace(g, aaab, DTrace{{1, 1}, 3, 0, 0}), InputError);
  // crossing the reset at the b
  CHECK_FALSE(verify_dtrace(g, parse_finite_word("aabaa", kAB), DTrace{{1, 3}, 4, 0, 0}));
}

TEST_CASE("verify_dtrace agrees with segment replay") {
  std::mt19937_64 rng(37);
  for (int round = 0; round < 300; ++round) {
    const auto a = oracle::random_automaton(rng, {3, 2, 3, true, 0}, kAB);
    const auto w = oracle::random_word(rng, kAB, 0, 12);
    std::vector<std::size_t> cuts;
    for (std::size_t p = 0; p <= 12; ++p)
      if (rng() % 3 == 0) cuts.push_back(p);
    if (cuts.size() < 2) continue;
    DTrace t{{cuts.begin(), cuts.end() - 1}, cuts.back(), static_cast<CounterId>(rng() % 2),
             static_cast<CounterId>(rng() % 2)};
    std::vector<OpList> steps;
    StateId s = a.initial();
    for (Letter l : w.letters) {
      steps.push_back(a.transition(s, l).ops);
      s = a.next(s, l);
    }
    auto ops = [&](std::size_t from, std::size_t to) {
      OpList out;
      for (std::size_t i = from; i < to; ++i) out.insert(out.end(), steps[i].begin(), steps[i].end());
      return out;
    };
    bool expected = true;
    for (std::size_t i = 0; i + 1 < t.loops.size(); ++i)
      expected = expected && oracle::replay_transfer(ops(t.loops[i], t.loops[i + 1]), 2, t.loop_counter,
                                                      t.loop_counter) == TC::TransferWithIncrement;
    expected = expected &&
               oracle::replay_transfer(ops(t.loops.back(), t.target), 2, t.loop_counter, t.target_counter) != TC::None;
    CHECK(verify_dtrace(a, w, t) == expected);
  }
}
