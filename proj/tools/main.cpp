#include <chrono>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "maxreg/automaton.hpp"
#include "maxreg/compile.hpp"
#include "maxreg/corpus.hpp"
#include "maxreg/emptiness.hpp"
#include "maxreg/errors.hpp"
#include "maxreg/io.hpp"
#include "maxreg/membership.hpp"

using namespace maxreg;

namespace {

enum Exit : int { kOk = 0, kNo = 1, kUnknown = 2, kInput = 3, kBudget = 4 };

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Accept: return kOk;
    case Verdict::Reject: return kNo;
    case Verdict::Unknown: return kUnknown;
  }
  return kUnknown;
}

MaxAutomaton load_valid(const std::string& path) {
  MaxAutomaton a = load_automaton(path);
  const auto report = validate(a);
  if (!report.ok()) throw InputError(path + ": " + report.problems.front());
  return a;
}

std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : list + ",") {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

int cmd_compile(const std::string& formula_file, const std::string& out, const std::string& dot, const std::string& letters,
                const std::string& free, std::size_t budget, bool no_reduce) {
  // '#' starts a comment line
  std::string text, line;
  std::istringstream in(load_text(formula_file));
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') text += line + "\n";
  CompileOptions options;
  options.state_budget = budget;
  options.reduce = !no_reduce;
  const auto start = std::chrono::steady_clock::now();
  CompileResult r;
  try {
    r = compile_text(text, Alphabet::from_chars(letters), split_names(free), options);
  } catch (const ParseError& e) {
    std::cerr << formula_file << ": parse error: " << e.what() << "\n";
    return kInput;
  } catch (const BudgetExceeded& e) {
    std::cerr << "state budget exceeded: " << e.what() << "\n";
    return kBudget;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  save_text(out, to_json(r.automaton));
  if (!dot.empty()) save_text(dot, to_dot(r.automaton));
  std::cout << format_trace(r.trace);
  std::cout << "states " << r.automaton.state_count() << " counters " << r.automaton.counter_count() << " tracks "
            << r.automaton.tracks() << " time " << secs << "s\n";
  return kOk;
}

int cmd_check(const std::string& file, const std::string& spec, std::size_t horizon) {
  const MaxAutomaton a = load_valid(file);
  const InfiniteWord w = parse_word_spec(spec, a.alphabet(), a.tracks());
  RampOptions options;
  options.horizon = horizon;
  const auto r = membership(a, w, options);
  std::cout << to_string(r.verdict) << "\n";
  std::cout << format_word_spec(w, a.alphabet()) << " " << format_atoms(a, r) << "\n";
  if (!r.note.empty()) std::cout << "note: " << r.note << "\n";
  return verdict_exit(r.verdict);
}

int cmd_empty(const std::string& file, std::size_t budget) {
  const MaxAutomaton a = load_valid(file);
  EmptinessOptions options;
  options.budget = budget;
  const auto r = emptiness_search(a, options);
  std::cout << to_string(r.status) << "\n";
  if (r.witness) std::cout << "witness " << r.certificate << "\n";
  if (!r.reason.empty()) std::cout << "reason: " << r.reason << "\n";
  switch (r.status) {
    case EmptinessStatus::Nonempty: return kOk;
    case EmptinessStatus::Empty: return kNo;
    case EmptinessStatus::Unknown: return kUnknown;
  }
  return kUnknown;
}

int cmd_eq(const std::string& fa, const std::string& fb, const std::string& corpus_file) {
  const MaxAutomaton a = load_valid(fa);
  const MaxAutomaton b = load_valid(fb);
  if (a.alphabet().names() != b.alphabet().names() || a.tracks() != b.tracks())
    throw InputError("automata read different alphabets or track widths");
  const auto corpus = corpus_file.empty() ? default_corpus(a.alphabet(), a.tracks())
                                          : parse_corpus(load_text(corpus_file), a.alphabet(), a.tracks());
  if (corpus.empty()) {
    std::cerr << "warning: empty corpus\n";
    return kOk;
  }
  std::size_t disagree = 0, unknown = 0;
  for (const auto& w : corpus) {
    const Verdict x = membership(a, w).verdict;
    const Verdict y = membership(b, w).verdict;
    const std::string spec = format_word_spec(w, a.alphabet());
    if (x == Verdict::Unknown || y == Verdict::Unknown) {
      ++unknown;
      std::cout << "unknown " << spec << " " << to_string(x) << " " << to_string(y) << "\n";
    } else if (x != y) {
      ++disagree;
      std::cout << "disagree " << spec << " " << to_string(x) << " " << to_string(y) << "\n";
    }
  }
  std::cout << corpus.size() << " words, " << disagree << " disagreements, " << unknown << " unknown\n";
  return disagree == 0 ? kOk : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"max-automata and the WMSO+U compiler"};
  app.require_subcommand(1);

  std::string formula, out, dot, letters = "ab", free;
  std::size_t state_budget = 1'000'000;
  bool no_reduce = false;
  auto* compile = app.add_subcommand("compile", "compile a formula file to automaton JSON");
  compile->add_option("-f,--formula", formula, "formula file")->required();
  compile->add_option("-o,--out", out, "automaton JSON output")->required();
  compile->add_option("--dot", dot, "Graphviz output");
  compile->add_option("--state-budget", state_budget, "states per construction");
  compile->add_option("--alphabet", letters, "one character per letter")->capture_default_str();
  compile->add_option("--free", free, "free set variables in track order, comma separated");
  compile->add_flag("--no-reduce", no_reduce, "only trim between steps");

  std::string automaton, spec;
  std::size_t horizon = 64;
  auto* check = app.add_subcommand("check", "decide acceptance of a lasso or ramp word");
  check->add_option("-a,--automaton", automaton, "automaton JSON")->required();
  check->add_option("-w,--word", spec, "lasso:u:v or ramp:u:v:w")->required();
  check->add_option("--horizon", horizon, "ramp blocks searched")->capture_default_str();

  std::size_t budget = 5000;
  auto* empty = app.add_subcommand("empty", "search for an accepted word");
  empty->add_option("-a,--automaton", automaton, "automaton JSON")->required();
  empty->add_option("--budget", budget, "membership tests")->capture_default_str();

  std::string other, corpus;
  auto* eq = app.add_subcommand("eq", "compare two automata on a word corpus");
  eq->add_option("-a", automaton, "first automaton JSON")->required();
  eq->add_option("-b", other, "second automaton JSON")->required();
  eq->add_option("--corpus", corpus, "word specs, one per line");

  unsigned tracks = 0;
  auto* list = app.add_subcommand("corpus", "print the default word corpus");
  list->add_option("--alphabet", letters, "one character per letter")->capture_default_str();
  list->add_option("--tracks", tracks, "annotation tracks")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInput;
  }

  try {
    if (compile->parsed()) return cmd_compile(formula, out, dot, letters, free, state_budget, no_reduce);
    if (check->parsed()) return cmd_check(automaton, spec, horizon);
    if (empty->parsed()) return cmd_empty(automaton, budget);
    if (eq->parsed()) return cmd_eq(automaton, other, corpus);
    if (list->parsed()) {
      const Alphabet alphabet = Alphabet::from_chars(letters);
      for (const auto& w : default_corpus(alphabet, tracks)) std::cout << format_word_spec(w, alphabet) << "\n";
      return kOk;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
