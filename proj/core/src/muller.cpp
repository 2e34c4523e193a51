#include "maxreg/muller.hpp"

#include "maxreg/errors.hpp"

namespace maxreg {

MullerAutomaton MullerAutomaton::make(Alphabet alphabet, unsigned tracks, std::size_t states) {
  MullerAutomaton m;
  m.alphabet = std::move(alphabet);
  m.tracks = tracks;
  m.states = states;
  m.delta.assign(states, std::vector<std::vector<StateId>>(letter_count(m.alphabet, tracks)));
  return m;
}

void MullerAutomaton::set(StateId from, Letter l, StateId to) { delta.at(from).at(letter_index(l, tracks)) = {to}; }

StateId MullerAutomaton::next(StateId from, Letter l) const {
  const auto& succ = delta.at(from).at(letter_index(l, tracks));
  if (succ.size() != 1) throw InputError("Muller automaton is not deterministic at this letter");
  return succ.front();
}

bool MullerAutomaton::deterministic() const {
  if (delta.size() != states) return false;
  for (const auto& row : delta) {
    if (row.size() != letter_count(alphabet, tracks)) return false;
    for (const auto& succ : row)
      if (succ.size() != 1 || succ.front() >= states) return false;
  }
  return initial < states;
}

Acceptance muller_acceptance(const std::vector<std::set<StateId>>& family, const std::vector<CounterId>& counter_of) {
  std::vector<Acceptance> options;
  for (const auto& f : family) {
    std::vector<Acceptance> clause;
    for (StateId q = 0; q < counter_of.size(); ++q) {
      auto atom = Acceptance::bounded(counter_of[q]);
      clause.push_back(f.count(q) ? Acceptance::negate(atom) : atom);
    }
    options.push_back(Acceptance::conj(std::move(clause)));
  }
  return Acceptance::disj(std::move(options)).simplified();
}

MaxAutomaton from_muller(const MullerAutomaton& m) {
  if (!m.deterministic()) throw InputError("from_muller: automaton must be deterministic and complete");
  MaxAutomaton out(m.alphabet, m.tracks);
  std::vector<CounterId> counter_of;
  for (StateId q = 0; q < m.states; ++q) {
    out.add_state("q" + std::to_string(q));
    counter_of.push_back(out.add_counter("c_q" + std::to_string(q)));
  }
  out.set_initial(m.initial);
  for (StateId q = 0; q < m.states; ++q) {
    for (std::size_t li = 0; li < out.letters(); ++li) {
      const StateId t = m.delta[q][li].front();
      out.set_transition(q, li, Transition{t, {CounterOp::inc(counter_of[t]), CounterOp::out(counter_of[t])}});
    }
  }
  out.set_acceptance(muller_acceptance(m.family, counter_of));
  return out;
}

}  // namespace maxreg
