#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace mefkit {

// Deterministic random helpers. std::uniform_int_distribution and friends are
// implementation defined, so everything that lands in a report goes through
// these fixed algorithms instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed)
      : seed_(seed ? seed : 0x9e3779b97f4a7c15ULL), engine_(seed_) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased integer in [0, bound). bound > 0.
  std::uint64_t below(std::uint64_t bound);

  // Integer in [lo, hi] inclusive. lo <= hi.
  std::int64_t range(std::int64_t lo, std::int64_t hi);

  // Uniform double in [0, 1) with 53 random bits.
  double unit();

  bool chance(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[below(i)]);
    }
  }

  template <typename T>
  const T& pick(const std::vector<T>& values) {
    return values[below(values.size())];
  }

  // Child generator whose stream is independent of the parent position.
  Rng fork(std::string_view tag) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_ = 0;
  std::mt19937_64 engine_;
};

// FNV-1a, used for input hashes in reports.
std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t value);

}  // namespace mefkit
