#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace maxreg::detail {

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull ^ v.size();
    for (std::uint32_t x : v) {
      h ^= x;
      h *= 0x100000001b3ull;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace maxreg::detail
