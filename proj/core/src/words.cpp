#include "maxreg/words.hpp"

#include "maxreg/errors.hpp"

namespace maxreg {

unsigned track_count(const InfiniteWord& word) {
  return std::visit([](const auto& w) { return w.v.tracks; }, word);
}

LassoWord make_lasso(FiniteWord u, FiniteWord v) {
  if (v.empty()) throw InputError("lasso period must be nonempty");
  if (!u.empty() && u.tracks != v.tracks) throw InputError("lasso components disagree on track width");
  u.tracks = v.tracks;
  return LassoWord{std::move(u), std::move(v)};
}

RampWord make_ramp(FiniteWord u, FiniteWord v, FiniteWord w, std::size_t first_block) {
  if (v.empty()) throw InputError("ramp loop word must be nonempty");
  if ((!u.empty() && u.tracks != v.tracks) || (!w.empty() && w.tracks != v.tracks))
    throw InputError("ramp components disagree on track width");
  if (first_block == 0) throw InputError("ramp blocks start at exponent 1 or more");
  u.tracks = v.tracks;
  w.tracks = v.tracks;
  return RampWord{std::move(u), std::move(v), std::move(w), first_block};
}

namespace {

/// Streams the letters of an infinite word.
class Cursor {
 public:
  explicit Cursor(const InfiniteWord& word) : word_(word) {}

  Letter next() {
    if (const auto* l = std::get_if<LassoWord>(&word_)) {
      if (pos_ < l->u.size()) return l->u.letters[pos_++];
      const Letter out = l->v.letters[(pos_ - l->u.size()) % l->v.size()];
      ++pos_;
      return out;
    }
    const auto& r = std::get<RampWord>(word_);
    if (pos_ < r.u.size()) return r.u.letters[pos_++];
    if (block_ == 0) block_ = r.first_block;
    for (;;) {
      const std::size_t vlen = block_ * r.v.size();
      if (in_block_ < vlen) {
        const Letter out = r.v.letters[in_block_ % r.v.size()];
        ++in_block_;
        return out;
      }
      if (in_block_ < vlen + r.w.size()) {
        const Letter out = r.w.letters[in_block_ - vlen];
        ++in_block_;
        return out;
      }
      ++block_;
      in_block_ = 0;
    }
  }

 private:
  const InfiniteWord& word_;
  std::size_t pos_ = 0;
  std::size_t block_ = 0;
  std::size_t in_block_ = 0;
};

FiniteWord with_zero_track(const FiniteWord& word) {
  FiniteWord out{word.tracks + 1, word.letters};
  return out;
}

}  // namespace

FiniteWord prefix(const InfiniteWord& word, std::size_t n) {
  FiniteWord out{track_count(word), {}};
  out.letters.reserve(n);
  Cursor cur(word);
  for (std::size_t i = 0; i < n; ++i) out.letters.push_back(cur.next());
  return out;
}

std::size_t ramp_block_index(const RampWord& word, std::size_t pos) {
  if (pos < word.u.size()) return 0;
  pos -= word.u.size();
  std::size_t block = word.first_block;
  for (std::size_t index = 1;; ++index, ++block) {
    const std::size_t len = block * word.v.size() + word.w.size();
    if (pos < len) return index;
    pos -= len;
  }
}

FiniteWord annotate(const FiniteWord& word, const std::set<std::size_t>& positions) {
  if (word.tracks >= kMaxTracks) throw UnsupportedError("too many annotation tracks");
  FiniteWord out{word.tracks + 1, word.letters};
  const Bits bit = Bits{1} << word.tracks;
  for (std::size_t p : positions)
    if (p < out.letters.size()) out.letters[p].bits |= bit;
  return out;
}

InfiniteWord annotate(const InfiniteWord& word, const std::set<std::size_t>& positions) {
  if (positions.empty()) {
    if (const auto* l = std::get_if<LassoWord>(&word)) return LassoWord{with_zero_track(l->u), with_zero_track(l->v)};
    const auto& r = std::get<RampWord>(word);
    return RampWord{with_zero_track(r.u), with_zero_track(r.v), with_zero_track(r.w), r.first_block};
  }
  const std::size_t last = *positions.rbegin();
  if (const auto* l = std::get_if<LassoWord>(&word)) {
    std::size_t len = l->u.size();
    while (len <= last) len += l->v.size();
    return LassoWord{annotate(prefix(word, len), positions), with_zero_track(l->v)};
  }
  const auto& r = std::get<RampWord>(word);
  // fold whole blocks into u so that the remainder is again a ramp
  std::size_t len = r.u.size();
  std::size_t block = r.first_block;
  while (len <= last) {
    len += block * r.v.size() + r.w.size();
    ++block;
  }
  return RampWord{annotate(prefix(word, len), positions), with_zero_track(r.v), with_zero_track(r.w), block};
}

FiniteWord project_last_track(const FiniteWord& word) {
  if (word.tracks == 0) throw InputError("word has no track to project");
  FiniteWord out{word.tracks - 1, word.letters};
  const Bits mask = (Bits{1} << out.tracks) - 1;
  for (auto& l : out.letters) l.bits &= mask;
  return out;
}

FiniteWord parse_finite_word(std::string_view text, const Alphabet& alphabet, unsigned tracks) {
  FiniteWord out{tracks, {}};
  std::size_t i = 0;
  while (i < text.size()) {
    auto sym = alphabet.find(text.substr(i, 1));
    if (!sym) throw ParseError("unknown symbol '" + std::string(text.substr(i, 1)) + "'", i);
    ++i;
    Bits bits = 0;
    if (i < text.size() && text[i] == '[') {
      const auto close = text.find(']', i);
      if (close == std::string_view::npos) throw ParseError("unterminated bit vector", i);
      const auto digits = text.substr(i + 1, close - i - 1);
      if (digits.size() != tracks)
        throw InputError("letter has " + std::to_string(digits.size()) + " bits, expected " + std::to_string(tracks));
      for (unsigned t = 0; t < digits.size(); ++t) {
        if (digits[t] == '1') bits |= Bits{1} << t;
        else if (digits[t] != '0') throw ParseError("bad bit", i + 1 + t);
      }
      i = close + 1;
    } else if (tracks != 0) {
      throw InputError("letter without bits, expected " + std::to_string(tracks) + " tracks");
    }
    out.letters.push_back(Letter{*sym, bits});
  }
  return out;
}

InfiniteWord parse_word_spec(std::string_view text, const Alphabet& alphabet, unsigned tracks) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  // ':' never occurs inside a letter, so a plain split is enough
  for (;;) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.front() == "lasso") {
    if (parts.size() != 3) throw ParseError("lasso spec needs exactly two components", 0);
    return make_lasso(parse_finite_word(parts[1], alphabet, tracks), parse_finite_word(parts[2], alphabet, tracks));
  }
  if (parts.front() == "ramp") {
    if (parts.size() != 4 && parts.size() != 5) throw ParseError("ramp spec needs three components", 0);
    std::size_t first = 1;
    if (parts.size() == 5) {
      try {
        first = std::stoul(std::string(parts[4]));
      } catch (const std::exception&) {
        throw ParseError("bad ramp start exponent", 0);
      }
    }
    return make_ramp(parse_finite_word(parts[1], alphabet, tracks), parse_finite_word(parts[2], alphabet, tracks),
                     parse_finite_word(parts[3], alphabet, tracks), first);
  }
  throw ParseError("word spec must start with lasso: or ramp:", 0);
}

std::string format_word(const FiniteWord& word, const Alphabet& alphabet) {
  std::string out;
  for (Letter l : word.letters) out += format_letter(alphabet, l, word.tracks);
  return out;
}

std::string format_word_spec(const InfiniteWord& word, const Alphabet& alphabet) {
  if (const auto* l = std::get_if<LassoWord>(&word))
    return "lasso:" + format_word(l->u, alphabet) + ":" + format_word(l->v, alphabet);
  const auto& r = std::get<RampWord>(word);
  std::string out = "ramp:" + format_word(r.u, alphabet) + ":" + format_word(r.v, alphabet) + ":" +
                    format_word(r.w, alphabet);
  if (r.first_block != 1) out += ":" + std::to_string(r.first_block);
  return out;
}

}  // namespace maxreg
