#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "maxreg/letter.hpp"

namespace maxreg {

struct FiniteWord {
  unsigned tracks = 0;
  std::vector<Letter> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  friend bool operator==(const FiniteWord&, const FiniteWord&) = default;
};

/// u · v^ω, v nonempty.
struct LassoWord {
  FiniteWord u;
  FiniteWord v;
  friend bool operator==(const LassoWord&, const LassoWord&) = default;
};

/// u · v^k w · v^(k+1) w · v^(k+2) w · ... with k = first_block (1 by default).
struct RampWord {
  FiniteWord u;
  FiniteWord v;
  FiniteWord w;
  std::size_t first_block = 1;
  friend bool operator==(const RampWord&, const RampWord&) = default;
};

using InfiniteWord = std::variant<LassoWord, RampWord>;

unsigned track_count(const InfiniteWord& word);

/// Throws InputError if v is empty or the track widths disagree.
LassoWord make_lasso(FiniteWord u, FiniteWord v);
RampWord make_ramp(FiniteWord u, FiniteWord v, FiniteWord w, std::size_t first_block = 1);

/// The first n letters of the denoted infinite word.
FiniteWord prefix(const InfiniteWord& word, std::size_t n);

/// Index of the v·w block that contains position `pos` (0 while still in u).
std::size_t ramp_block_index(const RampWord& word, std::size_t pos);

/// Adds a last track carrying 1 exactly at the positions in X. For lassos and
/// ramps the prefix up to max(X) is folded into u so the tail stays periodic.
FiniteWord annotate(const FiniteWord& word, const std::set<std::size_t>& positions);
InfiniteWord annotate(const InfiniteWord& word, const std::set<std::size_t>& positions);

/// Drops the last track.
FiniteWord project_last_track(const FiniteWord& word);

/// `lasso:<u>:<v>` or `ramp:<u>:<v>:<w>[:<first block>]`. Letters are single
/// characters of the alphabet, optionally followed by bits: `a[01]`.
/// `tracks` is the expected width; letters without bits are read with all
/// bits 0 only when tracks == 0.
InfiniteWord parse_word_spec(std::string_view text, const Alphabet& alphabet, unsigned tracks = 0);
FiniteWord parse_finite_word(std::string_view text, const Alphabet& alphabet, unsigned tracks = 0);

std::string format_word(const FiniteWord& word, const Alphabet& alphabet);
std::string format_word_spec(const InfiniteWord& word, const Alphabet& alphabet);

}  // namespace maxreg
