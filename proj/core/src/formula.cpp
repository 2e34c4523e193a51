#include "maxreg/formula.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace maxreg {

bool Formula::is_atom() const {
  switch (kind) {
    case FormulaKind::Not:
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Exists:
    case FormulaKind::Forall:
    case FormulaKind::ExistsFin:
    case FormulaKind::Unbounding: return false;
    default: return true;
  }
}

bool Formula::is_quantifier() const {
  return kind == FormulaKind::Exists || kind == FormulaKind::Forall || kind == FormulaKind::ExistsFin ||
         kind == FormulaKind::Unbounding;
}

FormulaPtr make_constant(bool value) {
  auto f = std::make_shared<Formula>();
  f->kind = value ? FormulaKind::True : FormulaKind::False;
  return f;
}

FormulaPtr make_atom(FormulaKind kind, std::vector<std::string> vars, std::string symbol) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->vars = std::move(vars);
  f->symbol = std::move(symbol);
  return f;
}

FormulaPtr make_not(FormulaPtr g) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Not;
  f->children = {std::move(g)};
  return f;
}

FormulaPtr make_binary(FormulaKind kind, FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->children = {std::move(a), std::move(b)};
  return f;
}

FormulaPtr make_quantifier(FormulaKind kind, std::string var, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->vars = {std::move(var)};
  f->children = {std::move(body)};
  return f;
}

namespace {

// precedence: 0 implication/quantifier, 1 or, 2 and, 3 unary
std::string print(const Formula& f, int context) {
  auto wrap = [&](std::string s, int level) { return context > level ? "(" + s + ")" : s; };
  const auto& v = f.vars;
  switch (f.kind) {
    case FormulaKind::True: return "true";
    case FormulaKind::False: return "false";
    case FormulaKind::In: return v[0] + " in " + v[1];
    case FormulaKind::Le: return v[0] + " <= " + v[1];
    case FormulaKind::Letter: return f.symbol + "(" + v[0] + ")";
    case FormulaKind::Sing: return "sing(" + v[0] + ")";
    case FormulaKind::Sub: return "sub(" + v[0] + "," + v[1] + ")";
    case FormulaKind::Before: return "before(" + v[0] + "," + v[1] + ")";
    case FormulaKind::LetterAll: return "letters(" + v[0] + "," + f.symbol + ")";
    case FormulaKind::Not: return "!" + print(*f.children[0], 3);
    case FormulaKind::And: return wrap(print(*f.children[0], 2) + " & " + print(*f.children[1], 3), 2);
    case FormulaKind::Or: return wrap(print(*f.children[0], 1) + " | " + print(*f.children[1], 2), 1);
    case FormulaKind::Implies: return wrap(print(*f.children[0], 1) + " -> " + print(*f.children[1], 0), 0);
    case FormulaKind::Exists: return wrap("ex " + v[0] + ". " + print(*f.children[0], 0), 0);
    case FormulaKind::Forall: return wrap("all " + v[0] + ". " + print(*f.children[0], 0), 0);
    case FormulaKind::ExistsFin: return wrap("exf " + v[0] + ". " + print(*f.children[0], 0), 0);
    case FormulaKind::Unbounding: return wrap("U " + v[0] + ". " + print(*f.children[0], 0), 0);
  }
  return "?";
}

/// Argument sorts of an atom: true for first-order positions.
std::vector<bool> argument_sorts(FormulaKind k) {
  switch (k) {
    case FormulaKind::In: return {true, false};
    case FormulaKind::Le: return {true, true};
    case FormulaKind::Letter: return {true};
    case FormulaKind::Sing:
    case FormulaKind::LetterAll: return {false};
    case FormulaKind::Sub:
    case FormulaKind::Before: return {false, false};
    default: return {};
  }
}

}  // namespace

std::string to_string(const FormulaPtr& f) { return print(*f, 0); }

std::vector<std::string> free_vars(const FormulaPtr& f) {
  std::vector<std::string> out;
  std::vector<std::string> bound;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is_quantifier()) {
      bound.push_back(g.vars[0]);
      walk(*g.children[0]);
      bound.pop_back();
      return;
    }
    for (const auto& v : g.vars) {
      if (std::find(bound.begin(), bound.end(), v) != bound.end()) continue;
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    for (const auto& c : g.children) walk(*c);
  };
  walk(*f);
  return out;
}

bool is_core(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::In:
    case FormulaKind::Le:
    case FormulaKind::Letter:
    case FormulaKind::Implies:
    case FormulaKind::Exists:
    case FormulaKind::Forall: return false;
    default: break;
  }
  return std::all_of(f->children.begin(), f->children.end(), [](const FormulaPtr& c) { return is_core(c); });
}

WellFormedReport well_formed(const FormulaPtr& f, bool core) {
  WellFormedReport r;
  std::vector<std::string> bound;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is_quantifier()) {
      const std::string& x = g.vars.at(0);
      const bool first_order = g.kind == FormulaKind::Exists || g.kind == FormulaKind::Forall;
      if (first_order != is_first_order_name(x)) r.problems.push_back("binder " + x + " has the wrong sort");
      if (std::find(bound.begin(), bound.end(), x) != bound.end()) r.problems.push_back("variable " + x + " rebound");
      bound.push_back(x);
      walk(*g.children.at(0));
      bound.pop_back();
      return;
    }
    if (g.is_atom()) {
      const auto sorts = argument_sorts(g.kind);
      if (sorts.size() != g.vars.size()) {
        r.problems.push_back("atom " + print(g, 0) + " has the wrong arity");
      } else {
        for (std::size_t i = 0; i < sorts.size(); ++i)
          if (sorts[i] != is_first_order_name(g.vars[i]))
            r.problems.push_back("argument " + g.vars[i] + " of " + print(g, 0) + " has the wrong sort");
      }
      if ((g.kind == FormulaKind::Letter || g.kind == FormulaKind::LetterAll) && g.symbol.empty())
        r.problems.push_back("letter predicate without a symbol");
    }
    const std::size_t arity = g.kind == FormulaKind::Not ? 1 : g.is_atom() ? 0 : 2;
    if (g.children.size() != arity) r.problems.push_back("connective with wrong number of operands");
    for (const auto& c : g.children) walk(*c);
  };
  walk(*f);
  if (core && !is_core(f)) r.problems.push_back("first-order construct in core formula");
  if (core)
    for (const auto& v : free_vars(f))
      if (is_first_order_name(v)) r.problems.push_back("free first-order variable " + v);
  return r;
}

std::size_t quantifier_count(const FormulaPtr& f) {
  std::size_t n = f->is_quantifier() ? 1 : 0;
  for (const auto& c : f->children) n += quantifier_count(c);
  return n;
}

}  // namespace maxreg
