#include <algorithm>

#include "maxreg/errors.hpp"
#include "maxreg/quantifiers.hpp"

namespace maxreg {

MullerAutomaton atom_muller(FormulaKind kind, const std::vector<unsigned>& track_of, std::optional<Symbol> symbol,
                            const Alphabet& alphabet, unsigned tracks) {
  for (unsigned t : track_of)
    if (t >= tracks) throw InputError("atom refers to track " + std::to_string(t) + " of " + std::to_string(tracks));
  MullerAutomaton m;
  const std::size_t letters = letter_count(alphabet, tracks);
  auto build = [&](std::size_t states, auto&& next, std::vector<std::set<StateId>> family) {
    m = MullerAutomaton::make(alphabet, tracks, states);
    for (StateId s = 0; s < states; ++s)
      for (std::size_t li = 0; li < letters; ++li) {
        const Letter l = letter_at(li, tracks);
        m.set(s, l, next(s, l));
      }
    m.family = std::move(family);
  };
  switch (kind) {
    case FormulaKind::Sing:
      // 0: nothing seen, 1: one element, 2: too many
      build(3, [&](StateId s, Letter l) -> StateId { return l.bit(track_of.at(0)) ? std::min<StateId>(s + 1, 2) : s; },
            {{1}});
      break;
    case FormulaKind::Sub:
      build(2,
            [&](StateId s, Letter l) -> StateId {
              return (s == 1 || (l.bit(track_of.at(0)) && !l.bit(track_of.at(1)))) ? 1 : 0;
            },
            {{0}});
      break;
    case FormulaKind::Before:
      // 0: no element of Y yet, 1: inside Y's range, 2: some X after a Y
      build(3,
            [&](StateId s, Letter l) -> StateId {
              const bool x = l.bit(track_of.at(0)), y = l.bit(track_of.at(1));
              if (s == 2) return 2;
              if (s == 0) return y ? (x ? 2 : 1) : 0;
              return x ? 2 : 1;
            },
            {{0}, {1}});
      break;
    case FormulaKind::LetterAll:
      if (!symbol) throw InputError("letter atom without a symbol");
      build(2,
            [&](StateId s, Letter l) -> StateId { return (s == 1 || (l.bit(track_of.at(0)) && l.symbol != *symbol)) ? 1 : 0; },
            {{0}});
      break;
    default: throw InputError("atom_muller: not a core atom");
  }
  return m;
}

MaxAutomaton atomic_automaton(const Formula& atom, const Alphabet& alphabet, const std::vector<std::string>& tracks) {
  const unsigned width = static_cast<unsigned>(tracks.size());
  if (atom.kind == FormulaKind::True || atom.kind == FormulaKind::False) {
    MaxAutomaton a(alphabet, width);
    const StateId s = a.add_state(atom.kind == FormulaKind::True ? "top" : "bottom");
    for (std::size_t l = 0; l < a.letters(); ++l) a.set_transition(s, l, Transition{s, {}});
    a.set_acceptance(Acceptance::constant(atom.kind == FormulaKind::True));
    return a;
  }
  std::vector<unsigned> track_of;
  for (const auto& v : atom.vars) {
    auto it = std::find(tracks.rbegin(), tracks.rend(), v);
    if (it == tracks.rend()) throw InputError("variable " + v + " has no track");
    track_of.push_back(static_cast<unsigned>(tracks.rend() - it - 1));
  }
  std::optional<Symbol> symbol;
  if (atom.kind == FormulaKind::LetterAll) {
    symbol = alphabet.find(atom.symbol);
    if (!symbol) throw InputError("letter " + atom.symbol + " is not in the alphabet");
  }
  return from_muller(atom_muller(atom.kind, track_of, symbol, alphabet, width));
}

}  // namespace maxreg
