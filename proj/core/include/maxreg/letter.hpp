#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace maxreg {

using Symbol = std::uint32_t;
using Bits = std::uint64_t;

/// Annotation tracks are stored in a 64-bit mask; 2^tracks letters per symbol
/// also have to fit a transition table, so the practical limit is much lower.
inline constexpr unsigned kMaxTracks = 16;

/// A base symbol together with one bit per annotation track (bit t = track t).
struct Letter {
  Symbol symbol = 0;
  Bits bits = 0;

  bool bit(unsigned track) const { return ((bits >> track) & 1u) != 0; }

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Finite base alphabet Σ. Symbols are named; word specs use one character each.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);
  static Alphabet from_chars(std::string_view chars);

  std::size_t size() const { return symbols_.size(); }
  const std::string& name(Symbol s) const { return symbols_.at(s); }
  const std::vector<std::string>& names() const { return symbols_; }
  std::optional<Symbol> find(std::string_view name) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> symbols_;
};

/// Number of letters of Σ × {0,1}^tracks.
inline std::size_t letter_count(const Alphabet& alphabet, unsigned tracks) {
  return alphabet.size() << tracks;
}

inline std::size_t letter_index(Letter l, unsigned tracks) {
  return (static_cast<std::size_t>(l.symbol) << tracks) | static_cast<std::size_t>(l.bits);
}

inline Letter letter_at(std::size_t index, unsigned tracks) {
  return Letter{static_cast<Symbol>(index >> tracks), static_cast<Bits>(index & ((Bits{1} << tracks) - 1))};
}

/// "a" for untracked letters, "a[01]" otherwise (track 0 printed first).
std::string format_letter(const Alphabet& alphabet, Letter l, unsigned tracks);

/// Bits as a string of '0'/'1', track 0 first.
std::string format_bits(Bits bits, unsigned tracks);

}  // namespace maxreg
