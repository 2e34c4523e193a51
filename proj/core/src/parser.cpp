#include <cctype>
#include <set>

#include "maxreg/errors.hpp"
#include "maxreg/formula.hpp"

namespace maxreg {

namespace {

enum class Tok { Ident, Dot, LParen, RParen, Comma, Bang, Amp, Bar, Arrow, Le, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t pos = 0;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (s.compare(i, 2, "->") == 0) {
      out.push_back({Tok::Arrow, "->", i});
      i += 2;
      continue;
    }
    if (s.compare(i, 2, "<=") == 0) {
      out.push_back({Tok::Le, "<=", i});
      i += 2;
      continue;
    }
    Tok k;
    switch (c) {
      case '.': k = Tok::Dot; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      case '!': k = Tok::Bang; break;
      case '&': k = Tok::Amp; break;
      case '|': k = Tok::Bar; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({k, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

bool is_reserved(const std::string& w) {
  static const std::set<std::string> words{"ex", "all", "exf", "U", "in", "true", "false"};
  return words.contains(w);
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& free_sets) : tokens_(lex(text)) {
    for (const auto& x : free_sets) {
      if (x.empty() || is_first_order_name(x)) throw ParseError("free variable " + x + " must be a set variable", 0);
      scope_.emplace_back(x, x);
      used_.insert(x);
    }
    for (const auto& t : tokens_)
      if (t.kind == Tok::Ident) used_.insert(t.text);
  }

  FormulaPtr parse() {
    auto f = implication();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(at_ + ahead, tokens_.size() - 1)]; }
  const Token& take() { return tokens_[at_ < tokens_.size() - 1 ? at_++ : at_]; }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) throw ParseError(std::string("expected ") + what, peek().pos);
    return take();
  }

  static FormulaPtr at(FormulaPtr f, std::size_t pos) {
    const_cast<Formula&>(*f).position = pos;
    return f;
  }

  FormulaPtr implication() {
    const std::size_t pos = peek().pos;
    auto lhs = disjunction();
    if (peek().kind != Tok::Arrow) return lhs;
    take();
    return at(make_binary(FormulaKind::Implies, lhs, implication()), pos);
  }

  FormulaPtr disjunction() {
    const std::size_t pos = peek().pos;
    auto f = conjunction();
    while (peek().kind == Tok::Bar) {
      take();
      f = at(make_binary(FormulaKind::Or, f, conjunction()), pos);
    }
    return f;
  }

  FormulaPtr conjunction() {
    const std::size_t pos = peek().pos;
    auto f = unary();
    while (peek().kind == Tok::Amp) {
      take();
      f = at(make_binary(FormulaKind::And, f, unary()), pos);
    }
    return f;
  }

  FormulaPtr unary() {
    const Token& t = peek();
    if (t.kind == Tok::Bang) {
      take();
      return at(make_not(unary()), t.pos);
    }
    if (t.kind == Tok::LParen) {
      take();
      auto f = implication();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "ex") return quantifier(FormulaKind::Exists, true);
      if (t.text == "all") return quantifier(FormulaKind::Forall, true);
      if (t.text == "exf") return quantifier(FormulaKind::ExistsFin, false);
      if (t.text == "U") return quantifier(FormulaKind::Unbounding, false);
      return atom();
    }
    throw ParseError(t.kind == Tok::End ? "unexpected end of formula" : "unexpected '" + t.text + "'", t.pos);
  }

  FormulaPtr quantifier(FormulaKind kind, bool first_order) {
    const std::size_t pos = take().pos;
    const Token& v = expect(Tok::Ident, "a variable");
    if (is_reserved(v.text)) throw ParseError("reserved word " + v.text + " used as a variable", v.pos);
    if (is_first_order_name(v.text) != first_order)
      throw ParseError(first_order ? "first-order variables are lowercase" : "set variables are uppercase", v.pos);
    expect(Tok::Dot, "'.'");
    const std::string name = fresh(v.text);
    scope_.emplace_back(v.text, name);
    auto body = implication();
    scope_.pop_back();
    return at(make_quantifier(kind, name, body), pos);
  }

  std::string fresh(const std::string& x) {
    if (!bound_.contains(x) && !in_scope(x)) {
      bound_.insert(x);
      return x;
    }
    for (std::size_t k = 2;; ++k) {
      std::string cand = x + "_" + std::to_string(k);
      if (!used_.contains(cand) && !bound_.contains(cand)) {
        bound_.insert(cand);
        used_.insert(cand);
        return cand;
      }
    }
  }

  bool in_scope(const std::string& x) const {
    for (const auto& [source, name] : scope_)
      if (source == x) return true;
    return false;
  }

  std::string resolve(const Token& t, bool first_order) {
    if (is_first_order_name(t.text) != first_order)
      throw ParseError(std::string("expected a ") + (first_order ? "first-order" : "set") + " variable, got " + t.text,
                       t.pos);
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == t.text) return it->second;
    throw ParseError("unbound variable " + t.text, t.pos);
  }

  FormulaPtr atom() {
    const Token& head = take();
    if (head.text == "true") return at(make_constant(true), head.pos);
    if (head.text == "false") return at(make_constant(false), head.pos);
    if (is_reserved(head.text)) throw ParseError("unexpected '" + head.text + "'", head.pos);
    if (peek().kind == Tok::LParen) {
      take();
      std::vector<Token> args{expect(Tok::Ident, "an argument")};
      while (peek().kind == Tok::Comma) {
        take();
        args.push_back(expect(Tok::Ident, "an argument"));
      }
      expect(Tok::RParen, "')'");
      const bool set_atom = !is_first_order_name(args[0].text);
      auto arity = [&](std::size_t n) {
        if (args.size() != n) throw ParseError(head.text + " takes " + std::to_string(n) + " arguments", head.pos);
      };
      if (set_atom && head.text == "sing") {
        arity(1);
        return at(make_atom(FormulaKind::Sing, {resolve(args[0], false)}), head.pos);
      }
      if (set_atom && (head.text == "sub" || head.text == "before")) {
        arity(2);
        return at(make_atom(head.text == "sub" ? FormulaKind::Sub : FormulaKind::Before,
                            {resolve(args[0], false), resolve(args[1], false)}),
                  head.pos);
      }
      if (set_atom && head.text == "letters") {
        arity(2);
        return at(make_atom(FormulaKind::LetterAll, {resolve(args[0], false)}, args[1].text), head.pos);
      }
      if (head.text == "sing" || head.text == "sub" || head.text == "before" || head.text == "letters")
        throw ParseError(head.text + " takes set variables", args[0].pos);
      arity(1);
      return at(make_atom(FormulaKind::Letter, {resolve(args[0], true)}, head.text), head.pos);
    }
    if (peek().kind == Tok::Ident && peek().text == "in") {
      take();
      const std::string x = resolve(head, true);
      const Token& set = expect(Tok::Ident, "a set variable");
      return at(make_atom(FormulaKind::In, {x, resolve(set, false)}), head.pos);
    }
    if (peek().kind == Tok::Le) {
      take();
      const std::string x = resolve(head, true);
      const Token& y = expect(Tok::Ident, "a variable");
      return at(make_atom(FormulaKind::Le, {x, resolve(y, true)}), head.pos);
    }
    throw ParseError("expected an atom after " + head.text, peek().pos);
  }

  std::vector<Token> tokens_;
  std::size_t at_ = 0;
  std::vector<std::pair<std::string, std::string>> scope_;  // source name -> unique name
  std::set<std::string> bound_;
  std::set<std::string> used_;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text, const std::vector<std::string>& free_sets) {
  return Parser(text, free_sets).parse();
}

}  // namespace maxreg
