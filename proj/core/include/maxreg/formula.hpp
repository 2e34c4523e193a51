#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace maxreg {

/// Surface constructs: In, Le, Letter, Implies, Exists, Forall (first-order sugar).
/// Core constructs: Sing, Sub, Before, LetterAll, Not, And, Or, ExistsFin, Unbounding.
enum class FormulaKind : std::uint8_t {
  True, False,
  In, Le, Letter,
  Sing, Sub, Before, LetterAll,
  Not, And, Or, Implies,
  Exists, Forall, ExistsFin, Unbounding,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind = FormulaKind::True;
  std::vector<std::string> vars;  ///< atom arguments, or the bound variable of a quantifier
  std::string symbol;             ///< letter of Letter / LetterAll
  std::vector<FormulaPtr> children;
  std::size_t position = 0;       ///< offset in the source text

  bool is_atom() const;
  bool is_quantifier() const;
};

FormulaPtr make_constant(bool value);
FormulaPtr make_atom(FormulaKind kind, std::vector<std::string> vars, std::string symbol = {});
FormulaPtr make_not(FormulaPtr f);
FormulaPtr make_binary(FormulaKind kind, FormulaPtr a, FormulaPtr b);
FormulaPtr make_quantifier(FormulaKind kind, std::string var, FormulaPtr body);

inline bool is_first_order_name(std::string_view name) { return !name.empty() && name[0] >= 'a' && name[0] <= 'z'; }

/// Parses the ASCII grammar; binders are alpha-renamed apart. `free_sets`
/// declares set variables that may occur free (in that track order).
/// Throws ParseError with the offending offset.
FormulaPtr parse_formula(std::string_view text, const std::vector<std::string>& free_sets = {});

/// Pretty printer whose output parses back to the same formula.
std::string to_string(const FormulaPtr& f);

/// Free variables in order of first appearance.
std::vector<std::string> free_vars(const FormulaPtr& f);

struct WellFormedReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

/// Checks variable sorts, unique binders along every path, and (when
/// `core` is set) the absence of first-order constructs.
WellFormedReport well_formed(const FormulaPtr& f, bool core = false);

bool is_core(const FormulaPtr& f);

/// First-order elimination: x becomes a singleton set X_x.
FormulaPtr desugar(const FormulaPtr& f);

/// Number of quantifiers (any kind).
std::size_t quantifier_count(const FormulaPtr& f);

}  // namespace maxreg
