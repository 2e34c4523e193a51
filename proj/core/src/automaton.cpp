#include "maxreg/automaton.hpp"

#include <algorithm>
#include <set>

#include "maxreg/errors.hpp"

namespace maxreg {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) throw InputError("empty alphabet symbol");
    if (!seen.insert(s).second) throw InputError("duplicate alphabet symbol " + s);
  }
}

Alphabet Alphabet::from_chars(std::string_view chars) {
  std::vector<std::string> symbols;
  for (char c : chars) symbols.emplace_back(1, c);
  return Alphabet(std::move(symbols));
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == name) return static_cast<Symbol>(i);
  return std::nullopt;
}

std::string format_bits(Bits bits, unsigned tracks) {
  std::string out;
  for (unsigned t = 0; t < tracks; ++t) out += ((bits >> t) & 1u) ? '1' : '0';
  return out;
}

std::string format_letter(const Alphabet& alphabet, Letter l, unsigned tracks) {
  std::string out = alphabet.name(l.symbol);
  if (tracks > 0) out += "[" + format_bits(l.bits, tracks) + "]";
  return out;
}

MaxAutomaton::MaxAutomaton(Alphabet alphabet, unsigned tracks) : alphabet_(std::move(alphabet)), tracks_(tracks) {
  if (tracks > kMaxTracks) throw UnsupportedError("too many annotation tracks: " + std::to_string(tracks));
}

StateId MaxAutomaton::add_state(std::string name) {
  state_names_.push_back(std::move(name));
  delta_.resize(state_names_.size() * letters());
  return static_cast<StateId>(state_names_.size() - 1);
}

CounterId MaxAutomaton::add_counter(std::string name) {
  counter_names_.push_back(std::move(name));
  return static_cast<CounterId>(counter_names_.size() - 1);
}

void MaxAutomaton::set_transition(StateId s, Letter l, Transition t) {
  set_transition(s, letter_index(l, tracks_), std::move(t));
}

void MaxAutomaton::set_transition(StateId s, std::size_t letter, Transition t) {
  delta_.at(index(s, letter)) = std::move(t);
}

void MaxAutomaton::clear_transition(StateId s, Letter l) { delta_.at(index(s, letter_index(l, tracks_))) = {}; }

std::optional<CounterId> MaxAutomaton::find_counter(std::string_view name) const {
  for (std::size_t i = 0; i < counter_names_.size(); ++i)
    if (counter_names_[i] == name) return static_cast<CounterId>(i);
  return std::nullopt;
}

std::optional<StateId> MaxAutomaton::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < state_names_.size(); ++i)
    if (state_names_[i] == name) return static_cast<StateId>(i);
  return std::nullopt;
}

bool MaxAutomaton::has_guarded_ops() const {
  for (const auto& t : delta_)
    for (const auto& op : t.ops)
      if (op.kind == OpKind::GuardedOutput) return true;
  return false;
}

ValidationReport validate(const MaxAutomaton& a) {
  ValidationReport r;
  const auto counters = a.counter_count();
  if (a.state_count() == 0) r.problems.push_back("automaton has no states");
  if (a.state_count() > 0 && a.initial() >= a.state_count())
    r.problems.push_back("initial state " + std::to_string(a.initial()) + " undeclared");
  for (StateId s = 0; s < a.state_count(); ++s) {
    for (std::size_t li = 0; li < a.letters(); ++li) {
      const Transition& t = a.transition(s, li);
      const std::string where = "(" + a.state_name(s) + "," + format_letter(a.alphabet(), letter_at(li, a.tracks()), a.tracks()) + ")";
      if (t.target == kNoState) {
        r.problems.push_back("delta undefined at " + where);
        continue;
      }
      if (t.target >= a.state_count()) r.problems.push_back("unknown target state at " + where);
      for (const auto& op : t.ops) {
        if (op.counter >= counters)
          r.problems.push_back("unknown counter #" + std::to_string(op.counter) + " at " + where);
        if (op.kind == OpKind::MaxInto && op.arg >= counters)
          r.problems.push_back("unknown counter #" + std::to_string(op.arg) + " at " + where);
        if (op.kind == OpKind::GuardedOutput) r.problems.push_back("guarded output in plain automaton at " + where);
      }
    }
  }
  for (CounterId c : a.acceptance().counters())
    if (c >= counters) r.problems.push_back("unknown counter #" + std::to_string(c) + " in acceptance");
  return r;
}

Configuration initial_configuration(const MaxAutomaton& a) {
  Configuration cfg;
  cfg.state = a.initial();
  cfg.valuation.assign(a.counter_count(), Natural{0});
  cfg.outputs.assign(a.counter_count(), {});
  return cfg;
}

void apply_ops(const OpList& ops, std::vector<Natural>& valuation,
               std::vector<std::pair<CounterId, Natural>>* outputs) {
  for (const auto& op : ops) {
    switch (op.kind) {
      case OpKind::Increment: valuation[op.counter] += 1; break;
      case OpKind::Reset: valuation[op.counter] = 0; break;
      case OpKind::Output:
        if (outputs) outputs->emplace_back(op.counter, valuation[op.counter]);
        break;
      case OpKind::MaxInto:
        if (valuation[op.arg] > valuation[op.counter]) valuation[op.counter] = valuation[op.arg];
        break;
      case OpKind::GuardedOutput:
        throw UnsupportedError("guarded output cannot be executed directly");
    }
  }
}

namespace {

void advance(const MaxAutomaton& a, Configuration& cfg, Letter l, std::vector<std::pair<CounterId, Natural>>& scratch) {
  if (l.symbol >= a.alphabet().size()) throw InputError("letter symbol outside alphabet");
  if ((l.bits >> a.tracks()) != 0) throw InputError("letter has more tracks than the automaton");
  const Transition& t = a.transition(cfg.state, l);
  if (t.target == kNoState) throw InputError("transition undefined");
  cfg.state = t.target;
  scratch.clear();
  apply_ops(t.ops, cfg.valuation, &scratch);
  for (auto& [c, v] : scratch) cfg.outputs[c].push_back(std::move(v));
}

}  // namespace

Configuration step(const MaxAutomaton& a, const Configuration& cfg, Letter l) {
  Configuration next = cfg;
  std::vector<std::pair<CounterId, Natural>> scratch;
  advance(a, next, l, scratch);
  return next;
}

Configuration run_finite(const MaxAutomaton& a, const std::vector<Letter>& word) {
  Configuration cfg = initial_configuration(a);
  std::vector<std::pair<CounterId, Natural>> scratch;
  for (Letter l : word) advance(a, cfg, l, scratch);
  return cfg;
}

std::vector<StateId> run_states(const MaxAutomaton& a, const std::vector<Letter>& word) {
  std::vector<StateId> states{a.initial()};
  for (Letter l : word) states.push_back(a.next(states.back(), l));
  return states;
}

std::string format_op(const CounterOp& op, const std::vector<std::string>& names) {
  auto name = [&](CounterId c) { return c < names.size() ? names[c] : "#" + std::to_string(c); };
  switch (op.kind) {
    case OpKind::Increment: return "inc " + name(op.counter);
    case OpKind::Reset: return "reset " + name(op.counter);
    case OpKind::Output: return "out " + name(op.counter);
    case OpKind::MaxInto: return "max " + name(op.counter) + " " + name(op.arg);
    case OpKind::GuardedOutput: return "gout " + name(op.counter) + " " + std::to_string(op.arg);
  }
  return "?";
}

}  // namespace maxreg
