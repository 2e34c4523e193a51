#include "maxreg/corpus.hpp"

#include "maxreg/errors.hpp"

namespace maxreg {

std::vector<FiniteWord> all_words(const Alphabet& alphabet, unsigned tracks, std::size_t min_length,
                                  std::size_t max_length) {
  const std::size_t letters = alphabet.size() << tracks;
  std::vector<FiniteWord> out;
  std::vector<FiniteWord> layer{FiniteWord{tracks, {}}};
  for (std::size_t len = 0; len <= max_length; ++len) {
    if (len >= min_length) out.insert(out.end(), layer.begin(), layer.end());
    if (len == max_length) break;
    std::vector<FiniteWord> next;
    next.reserve(layer.size() * letters);
    for (const auto& w : layer)
      for (std::size_t l = 0; l < letters; ++l) {
        FiniteWord x = w;
        x.letters.push_back(letter_at(l, tracks));
        next.push_back(std::move(x));
      }
    layer = std::move(next);
  }
  return out;
}

std::vector<InfiniteWord> default_corpus(const Alphabet& alphabet, unsigned tracks, const CorpusShape& shape) {
  std::vector<InfiniteWord> out;
  const auto us = all_words(alphabet, tracks, 0, shape.max_prefix);
  for (const auto& u : us)
    for (const auto& v : all_words(alphabet, tracks, 1, shape.max_period)) out.emplace_back(make_lasso(u, v));
  const auto parts = all_words(alphabet, tracks, 0, shape.max_ramp_part);
  for (const auto& u : parts)
    for (const auto& v : parts) {
      if (v.empty()) continue;
      for (const auto& w : parts) out.emplace_back(make_ramp(u, v, w));
    }
  return out;
}

std::vector<InfiniteWord> parse_corpus(std::string_view text, const Alphabet& alphabet, unsigned tracks) {
  std::vector<InfiniteWord> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    try {
      out.push_back(parse_word_spec(line, alphabet, tracks));
    } catch (const InputError& e) {
      throw InputError("corpus line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace maxreg
