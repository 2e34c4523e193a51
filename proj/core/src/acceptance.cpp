#include "maxreg/acceptance.hpp"

#include <algorithm>
#include <cctype>

#include "maxreg/errors.hpp"

namespace maxreg {

struct Acceptance::Node {
  Kind kind = Kind::True;
  CounterId counter = 0;
  std::vector<Acceptance> kids;
  std::string key;
  std::size_t size = 1;
};

namespace {

std::shared_ptr<const Acceptance::Node> make_node(Acceptance::Kind kind, CounterId counter,
                                                  std::vector<Acceptance> kids);

}  // namespace

Acceptance::Acceptance() : Acceptance(constant(true)) {}

Acceptance::Acceptance(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

namespace {

std::shared_ptr<const Acceptance::Node> make_node(Acceptance::Kind kind, CounterId counter,
                                                  std::vector<Acceptance> kids) {
  auto n = std::make_shared<Acceptance::Node>();
  n->kind = kind;
  n->counter = counter;
  switch (kind) {
    case Acceptance::Kind::True: n->key = "T"; break;
    case Acceptance::Kind::False: n->key = "F"; break;
    case Acceptance::Kind::Bounded: n->key = "B" + std::to_string(counter); break;
    case Acceptance::Kind::Not: n->key = "!" + kids.front().key(); break;
    case Acceptance::Kind::And:
    case Acceptance::Kind::Or: {
      n->key = kind == Acceptance::Kind::And ? "&(" : "|(";
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) n->key += ',';
        n->key += kids[i].key();
      }
      n->key += ')';
      break;
    }
  }
  for (const auto& k : kids) n->size += k.size();
  n->kids = std::move(kids);
  return n;
}

}  // namespace

Acceptance Acceptance::constant(bool value) {
  static const Acceptance t{make_node(Kind::True, 0, {})};
  static const Acceptance f{make_node(Kind::False, 0, {})};
  return value ? t : f;
}

Acceptance Acceptance::bounded(CounterId c) { return Acceptance{make_node(Kind::Bounded, c, {})}; }

Acceptance Acceptance::negate(const Acceptance& f) { return Acceptance{make_node(Kind::Not, 0, {f})}; }

Acceptance Acceptance::conj(std::vector<Acceptance> parts) {
  if (parts.empty()) return constant(true);
  if (parts.size() == 1) return parts.front();
  return Acceptance{make_node(Kind::And, 0, std::move(parts))};
}

Acceptance Acceptance::disj(std::vector<Acceptance> parts) {
  if (parts.empty()) return constant(false);
  if (parts.size() == 1) return parts.front();
  return Acceptance{make_node(Kind::Or, 0, std::move(parts))};
}

Acceptance::Kind Acceptance::kind() const { return node_->kind; }
CounterId Acceptance::counter() const { return node_->counter; }
std::span<const Acceptance> Acceptance::children() const { return node_->kids; }
const std::string& Acceptance::key() const { return node_->key; }
std::size_t Acceptance::size() const { return node_->size; }

std::optional<bool> Acceptance::as_constant() const {
  if (kind() == Kind::True) return true;
  if (kind() == Kind::False) return false;
  return std::nullopt;
}

Acceptance Acceptance::simplified() const {
  switch (kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Bounded:
      return *this;
    case Kind::Not: {
      Acceptance inner = children().front().simplified();
      if (auto c = inner.as_constant()) return constant(!*c);
      if (inner.kind() == Kind::Not) return inner.children().front();
      return negate(inner);
    }
    case Kind::And:
    case Kind::Or: {
      const bool is_and = kind() == Kind::And;
      std::vector<Acceptance> flat;
      for (const auto& k : children()) {
        Acceptance s = k.simplified();
        if (auto c = s.as_constant()) {
          // absorbing element decides, neutral element vanishes
          if (*c != is_and) return constant(*c);
          continue;
        }
        if (s.kind() == kind()) {
          for (const auto& g : s.children()) flat.push_back(g);
        } else {
          flat.push_back(s);
        }
      }
      std::sort(flat.begin(), flat.end(),
                [](const Acceptance& a, const Acceptance& b) { return a.key() < b.key(); });
      flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
      for (const auto& f : flat) {
        if (f.kind() != Kind::Not) continue;
        if (std::binary_search(flat.begin(), flat.end(), f.children().front(),
                               [](const Acceptance& a, const Acceptance& b) { return a.key() < b.key(); })) {
          return constant(!is_and);
        }
      }
      if (flat.empty()) return constant(is_and);
      return is_and ? conj(std::move(flat)) : disj(std::move(flat));
    }
  }
  return *this;
}

bool Acceptance::eval(const std::function<bool(CounterId)>& bounded) const {
  switch (kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Bounded: return bounded(counter());
    case Kind::Not: return !children().front().eval(bounded);
    case Kind::And:
      for (const auto& k : children())
        if (!k.eval(bounded)) return false;
      return true;
    case Kind::Or:
      for (const auto& k : children())
        if (k.eval(bounded)) return true;
      return false;
  }
  return false;
}

bool Acceptance::eval(const std::map<CounterId, bool>& bounded) const {
  return eval([&](CounterId c) {
    auto it = bounded.find(c);
    if (it == bounded.end()) throw InputError("no boundedness verdict for counter " + std::to_string(c));
    return it->second;
  });
}

Acceptance Acceptance::map_atoms(const std::function<Acceptance(CounterId)>& replacement) const {
  switch (kind()) {
    case Kind::True:
    case Kind::False:
      return *this;
    case Kind::Bounded:
      return replacement(counter());
    case Kind::Not:
      return negate(children().front().map_atoms(replacement)).simplified();
    case Kind::And:
    case Kind::Or: {
      std::vector<Acceptance> kids;
      kids.reserve(children().size());
      for (const auto& k : children()) kids.push_back(k.map_atoms(replacement));
      return (kind() == Kind::And ? conj(std::move(kids)) : disj(std::move(kids))).simplified();
    }
  }
  return *this;
}

Acceptance Acceptance::substitute(const std::function<std::optional<bool>(CounterId)>& value) const {
  return map_atoms([&](CounterId c) {
    if (auto v = value(c)) return constant(*v);
    return bounded(c);
  });
}

Acceptance Acceptance::renamed(const std::function<CounterId(CounterId)>& rename) const {
  switch (kind()) {
    case Kind::True:
    case Kind::False:
      return *this;
    case Kind::Bounded:
      return bounded(rename(counter()));
    case Kind::Not:
      return negate(children().front().renamed(rename));
    case Kind::And:
    case Kind::Or: {
      std::vector<Acceptance> kids;
      kids.reserve(children().size());
      for (const auto& k : children()) kids.push_back(k.renamed(rename));
      return kind() == Kind::And ? conj(std::move(kids)) : disj(std::move(kids));
    }
  }
  return *this;
}

std::set<CounterId> Acceptance::counters() const {
  std::set<CounterId> out;
  std::vector<const Acceptance*> stack{this};
  while (!stack.empty()) {
    const Acceptance* f = stack.back();
    stack.pop_back();
    if (f->kind() == Kind::Bounded) out.insert(f->counter());
    for (const auto& k : f->children()) stack.push_back(&k);
  }
  return out;
}

std::optional<bool> Acceptance::semantic_constant(std::size_t max_atoms) const {
  Acceptance s = simplified();
  if (auto c = s.as_constant()) return c;
  std::vector<CounterId> atoms;
  for (CounterId c : s.counters()) atoms.push_back(c);
  if (atoms.size() > max_atoms) return std::nullopt;
  std::map<CounterId, bool> assignment;
  std::optional<bool> seen;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << atoms.size()); ++mask) {
    for (std::size_t i = 0; i < atoms.size(); ++i) assignment[atoms[i]] = ((mask >> i) & 1u) != 0;
    bool v = s.eval(assignment);
    if (seen && *seen != v) return std::nullopt;
    seen = v;
  }
  return seen;
}

namespace {

void print(const Acceptance& f, const std::vector<std::string>& names, std::string& out, int parent) {
  // precedence: | = 1, & = 2, ! = 3
  switch (f.kind()) {
    case Acceptance::Kind::True: out += "true"; return;
    case Acceptance::Kind::False: out += "false"; return;
    case Acceptance::Kind::Bounded:
      out += "B(";
      out += f.counter() < names.size() ? names[f.counter()] : "#" + std::to_string(f.counter());
      out += ")";
      return;
    case Acceptance::Kind::Not:
      out += "!";
      print(f.children().front(), names, out, 3);
      return;
    case Acceptance::Kind::And:
    case Acceptance::Kind::Or: {
      const int prec = f.kind() == Acceptance::Kind::And ? 2 : 1;
      if (prec < parent) out += "(";
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += prec == 2 ? " & " : " | ";
        print(f.children()[i], names, out, prec + 1);
      }
      if (prec < parent) out += ")";
      return;
    }
  }
}

class AcceptanceParser {
 public:
  AcceptanceParser(std::string_view text, const std::function<std::optional<CounterId>(std::string_view)>& lookup)
      : text_(text), lookup_(lookup) {}

  Acceptance run() {
    Acceptance f = parse_or();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input in acceptance formula", pos_);
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool eat_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) return false;
    std::size_t end = pos_ + w.size();
    if (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
      return false;
    pos_ = end;
    return true;
  }

  Acceptance parse_or() {
    std::vector<Acceptance> parts{parse_and()};
    while (eat('|')) parts.push_back(parse_and());
    return Acceptance::disj(std::move(parts));
  }
  Acceptance parse_and() {
    std::vector<Acceptance> parts{parse_unary()};
    while (eat('&')) parts.push_back(parse_unary());
    return Acceptance::conj(std::move(parts));
  }
  Acceptance parse_unary() {
    if (eat('!')) return Acceptance::negate(parse_unary());
    if (eat('(')) {
      Acceptance f = parse_or();
      if (!eat(')')) throw ParseError("expected ')' in acceptance formula", pos_);
      return f;
    }
    if (eat_word("true")) return Acceptance::constant(true);
    if (eat_word("false")) return Acceptance::constant(false);
    skip_ws();
    if (eat_word("B")) {
      if (!eat('(')) throw ParseError("expected '(' after B", pos_);
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != ')') ++pos_;
      if (pos_ == text_.size()) throw ParseError("unterminated B(...)", start);
      std::string_view name = text_.substr(start, pos_ - start);
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.remove_suffix(1);
      ++pos_;
      auto id = lookup_(name);
      if (!id) throw InputError("unknown counter " + std::string(name));
      return Acceptance::bounded(*id);
    }
    throw ParseError("expected atom in acceptance formula", pos_);
  }

  std::string_view text_;
  const std::function<std::optional<CounterId>(std::string_view)>& lookup_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string Acceptance::to_string(const std::vector<std::string>& counter_names) const {
  std::string out;
  print(*this, counter_names, out, 0);
  return out;
}

Acceptance Acceptance::parse(std::string_view text,
                             const std::function<std::optional<CounterId>(std::string_view)>& lookup) {
  return AcceptanceParser(text, lookup).run();
}

Acceptance combine(Connective op, const Acceptance& a, const Acceptance& b) {
  switch (op) {
    case Connective::And: return Acceptance::conj(a, b).simplified();
    case Connective::Or: return Acceptance::disj(a, b).simplified();
    case Connective::Implies: return Acceptance::disj(Acceptance::negate(a), b).simplified();
    case Connective::Iff:
      return Acceptance::disj(Acceptance::conj(a, b), Acceptance::conj(Acceptance::negate(a), Acceptance::negate(b)))
          .simplified();
  }
  return a;
}

}  // namespace maxreg
