#include <functional>
#include <map>
#include <set>

#include "maxreg/errors.hpp"
#include "maxreg/formula.hpp"

namespace maxreg {

namespace {

void collect_names(const Formula& f, std::set<std::string>& out) {
  out.insert(f.vars.begin(), f.vars.end());
  for (const auto& c : f.children) collect_names(*c, out);
}

class Desugarer {
 public:
  explicit Desugarer(const FormulaPtr& f) { collect_names(*f, taken_); }

  FormulaPtr run(const FormulaPtr& f) {
    using K = FormulaKind;
    const auto& v = f->vars;
    switch (f->kind) {
      case K::True:
      case K::False:
      case K::Sing:
      case K::Sub:
      case K::Before:
      case K::LetterAll: return f;
      case K::In: return make_atom(K::Sub, {set_of(v[0]), v[1]});
      case K::Le: {
        const std::string x = set_of(v[0]), y = set_of(v[1]);
        return make_binary(K::Or, make_atom(K::Before, {x, y}),
                           make_binary(K::And, make_atom(K::Sub, {x, y}), make_atom(K::Sub, {y, x})));
      }
      case K::Letter: return make_atom(K::LetterAll, {set_of(v[0])}, f->symbol);
      case K::Not: return make_not(run(f->children[0]));
      case K::And:
      case K::Or: return make_binary(f->kind, run(f->children[0]), run(f->children[1]));
      case K::Implies: return make_binary(K::Or, make_not(run(f->children[0])), run(f->children[1]));
      case K::Exists:
      case K::Forall: {
        const std::string x = bind(v[0]);
        FormulaPtr body = run(f->children[0]);
        if (f->kind == K::Forall) body = make_not(body);
        FormulaPtr ex = make_quantifier(K::ExistsFin, x, make_binary(K::And, make_atom(K::Sing, {x}), body));
        return f->kind == K::Forall ? make_not(ex) : ex;
      }
      case K::ExistsFin:
      case K::Unbounding: return make_quantifier(f->kind, v[0], run(f->children[0]));
    }
    throw std::logic_error("desugar: unknown formula kind");
  }

 private:
  std::string bind(const std::string& x) {
    std::string base = "X" + x;
    std::string name = base;
    for (std::size_t k = 2; taken_.contains(name); ++k) name = base + "_" + std::to_string(k);
    taken_.insert(name);
    sets_[x] = name;
    return name;
  }

  std::string set_of(const std::string& x) const {
    auto it = sets_.find(x);
    if (it == sets_.end()) throw InputError("free first-order variable " + x);
    return it->second;
  }

  std::set<std::string> taken_;
  std::map<std::string, std::string> sets_;
};

}  // namespace

FormulaPtr desugar(const FormulaPtr& f) {
  if (const auto report = well_formed(f); !report.ok()) throw InputError("ill-formed formula: " + report.problems.front());
  return Desugarer(f).run(f);
}

}  // namespace maxreg
