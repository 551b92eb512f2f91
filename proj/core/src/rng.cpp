#include "mefkit/rng.hpp"

#include <array>
#include <cstdio>

namespace mefkit {

std::uint64_t Rng::below(std::uint64_t bound) {
  // Rejection sampling keeps the draw unbiased for every bound.
  const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

std::int64_t Rng::range(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  return lo + static_cast<std::int64_t>(below(span));
}

double Rng::unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Rng Rng::fork(std::string_view tag) const {
  std::uint64_t h = fnv1a(tag);
  // Mix the parent's seed so distinct suites get distinct streams even when
  // tags collide across parents.
  h ^= seed_ + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return Rng(h ? h : 1);
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx",
                static_cast<unsigned long long>(value));
  return std::string(buf.data(), 16);
}

}  // namespace mefkit
