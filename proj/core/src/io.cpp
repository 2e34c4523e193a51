#include "maxreg/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "maxreg/errors.hpp"

namespace maxreg {

using nlohmann::json;

std::string to_json(const MaxAutomaton& a) {
  json doc;
  doc["alphabet"] = a.alphabet().names();
  doc["tracks"] = a.tracks();
  doc["states"] = a.state_names();
  doc["initial"] = a.state_name(a.initial());
  doc["counters"] = a.counter_names();
  json transitions = json::object();
  for (StateId s = 0; s < a.state_count(); ++s) {
    for (std::size_t li = 0; li < a.letters(); ++li) {
      const Transition& t = a.transition(s, li);
      if (t.target == kNoState) continue;
      const Letter l = letter_at(li, a.tracks());
      json ops = json::array();
      for (const auto& op : t.ops) {
        if (op.kind == OpKind::GuardedOutput) throw UnsupportedError("guarded ops have no JSON form");
        ops.push_back(format_op(op, a.counter_names()));
      }
      transitions[a.state_name(s) + "|" + a.alphabet().name(l.symbol) + "|" + format_bits(l.bits, a.tracks())] =
          json{{"target", a.state_name(t.target)}, {"ops", ops}};
    }
  }
  doc["transitions"] = transitions;
  doc["acceptance"] = a.acceptance().to_string(a.counter_names());
  return doc.dump(1);
}

namespace {

CounterOp parse_op(const std::string& text, const MaxAutomaton& a) {
  std::istringstream in(text);
  std::string verb, c, d;
  in >> verb >> c >> d;
  auto counter = [&](const std::string& name) {
    auto id = a.find_counter(name);
    if (!id) throw InputError("unknown counter " + name + " in op '" + text + "'");
    return *id;
  };
  if (verb == "inc") return CounterOp::inc(counter(c));
  if (verb == "reset") return CounterOp::reset(counter(c));
  if (verb == "out") return CounterOp::out(counter(c));
  if (verb == "max") return CounterOp::max(counter(c), counter(d));
  throw InputError("unknown op '" + text + "'");
}

}  // namespace

MaxAutomaton from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("automaton JSON: ") + e.what());
  }
  try {
    MaxAutomaton a(Alphabet(doc.at("alphabet").get<std::vector<std::string>>()), doc.value("tracks", 0u));
    for (const auto& s : doc.at("states")) a.add_state(s.get<std::string>());
    for (const auto& c : doc.value("counters", std::vector<std::string>{})) a.add_counter(c);
    auto state = [&](const std::string& name) {
      auto id = a.find_state(name);
      if (!id) throw InputError("unknown state " + name);
      return *id;
    };
    a.set_initial(state(doc.at("initial").get<std::string>()));
    for (const auto& [key, value] : doc.at("transitions").items()) {
      // state names may contain '|', symbols and bits may not
      const auto p2 = key.rfind('|');
      const auto p1 = p2 == std::string::npos || p2 == 0 ? std::string::npos : key.rfind('|', p2 - 1);
      if (p1 == std::string::npos) throw InputError("bad transition key " + key);
      const StateId s = state(key.substr(0, p1));
      auto sym = a.alphabet().find(key.substr(p1 + 1, p2 - p1 - 1));
      if (!sym) throw InputError("unknown symbol in transition key " + key);
      const std::string bits = key.substr(p2 + 1);
      if (bits.size() != a.tracks()) throw InputError("track width mismatch in transition key " + key);
      Bits b = 0;
      for (unsigned t = 0; t < bits.size(); ++t) {
        if (bits[t] != '0' && bits[t] != '1') throw InputError("bad bit in transition key " + key);
        if (bits[t] == '1') b |= Bits{1} << t;
      }
      Transition t;
      t.target = state(value.at("target").get<std::string>());
      for (const auto& op : value.value("ops", std::vector<std::string>{})) t.ops.push_back(parse_op(op, a));
      a.set_transition(s, Letter{*sym, b}, std::move(t));
    }
    a.set_acceptance(Acceptance::parse(doc.value("acceptance", std::string("true")),
                                       [&](std::string_view n) { return a.find_counter(n); }));
    return a;
  } catch (const json::exception& e) {
    throw InputError(std::string("automaton JSON: ") + e.what());
  }
}

std::string to_dot(const MaxAutomaton& a) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream out;
  out << "digraph maxautomaton {\n  rankdir=LR;\n  __start [shape=point];\n";
  for (StateId s = 0; s < a.state_count(); ++s) out << "  " << s << " [label=" << quote(a.state_name(s)) << "];\n";
  out << "  __start -> " << a.initial() << ";\n";
  for (StateId s = 0; s < a.state_count(); ++s) {
    for (std::size_t li = 0; li < a.letters(); ++li) {
      const Transition& t = a.transition(s, li);
      if (t.target == kNoState) continue;
      std::string label = format_letter(a.alphabet(), letter_at(li, a.tracks()), a.tracks());
      for (std::size_t i = 0; i < t.ops.size(); ++i)
        label += (i ? "; " : ": ") + format_op(t.ops[i], a.counter_names());
      out << "  " << s << " -> " << t.target << " [label=" << quote(label) << "];\n";
    }
  }
  out << "  label=" << quote("acceptance: " + a.acceptance().to_string(a.counter_names())) << ";\n}\n";
  return out.str();
}

std::string load_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

MaxAutomaton load_automaton(const std::string& path) { return from_json(load_text(path)); }

}  // namespace maxreg
