#include "maxreg/compile.hpp"

#include <algorithm>

#include "maxreg/boolean_ops.hpp"
#include "maxreg/errors.hpp"
#include "maxreg/quantifiers.hpp"

namespace maxreg {

namespace {

class Compiler {
 public:
  Compiler(const Alphabet& alphabet, const CompileOptions& options, std::vector<std::string> scope)
      : alphabet_(alphabet), options_(options), scope_(std::move(scope)) {}

  MaxAutomaton run(const Formula& f) {
    switch (f.kind) {
      case FormulaKind::True:
      case FormulaKind::False:
      case FormulaKind::Sing:
      case FormulaKind::Sub:
      case FormulaKind::Before:
      case FormulaKind::LetterAll:
        return record(atom_name(f), atomic_automaton(f, alphabet_, scope_), false);
      case FormulaKind::Not: {
        const Formula& inner = *f.children.at(0);
        if (inner.kind == FormulaKind::Not) return run(*inner.children.at(0));
        return record("not", complement(run(inner)), false);
      }
      case FormulaKind::And:
      case FormulaKind::Or: {
        MaxAutomaton a = run(*f.children.at(0));
        MaxAutomaton b = run(*f.children.at(1));
        const bool conj = f.kind == FormulaKind::And;
        return record(conj ? "and" : "or", product(a, b, conj ? Connective::And : Connective::Or, options_.state_budget),
                      true);
      }
      case FormulaKind::ExistsFin:
      case FormulaKind::Unbounding: {
        scope_.push_back(f.vars.at(0));
        MaxAutomaton body = run(*f.children.at(0));
        scope_.pop_back();
        if (f.kind == FormulaKind::ExistsFin)
          return record("exists_fin " + f.vars[0], exists_fin(body, options_.state_budget), true);
        GuardOptions g;
        g.guard_limit = options_.guard_limit;
        g.state_budget = options_.state_budget;
        return record("unbounding " + f.vars[0], u_quantifier(body, g), true);
      }
      default:
        throw InputError("compile expects a core formula, found a first-order construct");
    }
  }

  std::vector<CompileStep> trace;

 private:
  static std::string atom_name(const Formula& f) {
    switch (f.kind) {
      case FormulaKind::True: return "true";
      case FormulaKind::False: return "false";
      case FormulaKind::Sing: return "sing";
      case FormulaKind::Sub: return "sub";
      case FormulaKind::Before: return "before";
      default: return "letters";
    }
  }

  MaxAutomaton record(std::string name, MaxAutomaton a, bool shrink) {
    if (shrink && options_.reduce) a = reduce(a, options_.reduce_options);
    trace.push_back({std::move(name), a.state_count(), a.counter_count()});
    return a;
  }

  const Alphabet& alphabet_;
  const CompileOptions& options_;
  std::vector<std::string> scope_;
};

}  // namespace

CompileResult compile(const FormulaPtr& core, const Alphabet& alphabet, const CompileOptions& options,
                      std::vector<std::string> tracks) {
  if (!core) throw InputError("compile: null formula");
  const auto report = well_formed(core, true);
  if (!report.ok()) throw InputError("compile: " + report.problems.front());
  auto vars = tracks.empty() ? free_vars(core) : std::move(tracks);
  for (const auto& v : free_vars(core))
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) throw InputError("free variable " + v + " has no track");
  Compiler c(alphabet, options, vars);
  MaxAutomaton a = c.run(*core);
  return CompileResult{std::move(a), std::move(vars), std::move(c.trace)};
}

CompileResult compile_text(std::string_view text, const Alphabet& alphabet, const std::vector<std::string>& free_sets,
                           const CompileOptions& options) {
  const FormulaPtr core = desugar(parse_formula(text, free_sets));
  return compile(core, alphabet, options, free_sets);
}

std::string format_trace(const std::vector<CompileStep>& trace) {
  std::string out;
  for (const auto& s : trace)
    out += s.constructor + " " + std::to_string(s.states) + " " + std::to_string(s.counters) + "\n";
  return out;
}

}  // namespace maxreg
