#pragma once

#include <string>
#include <string_view>

#include "maxreg/automaton.hpp"

namespace maxreg {

/// JSON document:
///   {"alphabet":[...], "tracks":n, "states":[...], "initial":s, "counters":[...],
///    "transitions":{"state|symbol|bits":{"target":t,"ops":["inc c","reset c","out c","max c d"]}},
///    "acceptance":"!B(c) & B(d)"}
/// Bits are written track 0 first and are empty for untracked automata.
std::string to_json(const MaxAutomaton& a);

/// Parses the JSON document. Missing transitions are left undefined so that
/// validate() can report them; malformed documents throw InputError.
MaxAutomaton from_json(std::string_view text);

/// Graphviz: one node per state, one edge per (symbol, bits) labelled with ops.
std::string to_dot(const MaxAutomaton& a);

MaxAutomaton load_automaton(const std::string& path);
void save_text(const std::string& path, const std::string& text);
std::string load_text(const std::string& path);

}  // namespace maxreg
