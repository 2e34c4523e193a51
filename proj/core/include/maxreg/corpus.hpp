#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "maxreg/words.hpp"

namespace maxreg {

struct CorpusShape {
  std::size_t max_prefix = 2;       ///< lasso |u|
  std::size_t max_period = 3;       ///< lasso |v|
  std::size_t max_ramp_part = 2;    ///< ramp |u|, |v|, |w|
};

/// All finite words of length in [min_length, max_length] over the letters of
/// Σ × {0,1}^tracks, shortest first, then in letter-index order.
std::vector<FiniteWord> all_words(const Alphabet& alphabet, unsigned tracks, std::size_t min_length,
                                  std::size_t max_length);

/// Every lasso within the shape, then every ramp.
std::vector<InfiniteWord> default_corpus(const Alphabet& alphabet, unsigned tracks = 0, const CorpusShape& shape = {});

/// One word spec per line; blank lines and lines starting with '#' are skipped.
/// Throws InputError naming the line number of a malformed spec.
std::vector<InfiniteWord> parse_corpus(std::string_view text, const Alphabet& alphabet, unsigned tracks = 0);

}  // namespace maxreg
