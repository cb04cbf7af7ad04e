#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace reccs {

constexpr std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Named deterministic random stream: (seed, stream name) fully determines the
// draw sequence. Bounded draws use masked rejection on raw engine output
// because std::uniform_int_distribution is implementation-defined and would
// break cross-platform reproducibility.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string name)
      : seed_(seed),
        name_(std::move(name)),
        engine_(mix64(seed ^ fnv1a64(name_))) {}

  // Child stream independent of this stream's draw position.
  RngStream fork(std::string_view child) const {
    std::string sub = name_;
    sub += '/';
    sub += child;
    return RngStream(seed_, std::move(sub));
  }

  std::uint64_t seed() const { return seed_; }
  const std::string& name() const { return name_; }

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound), unbiased.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("RngStream::below: bound must be positive");
    if (bound == 1) return 0;
    const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(bound - 1);
    for (;;) {
      const std::uint64_t r = engine_() & mask;
      if (r < bound) return r;
    }
  }

  std::size_t index(std::size_t size) { return static_cast<std::size_t>(below(size)); }

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[index(i)]);
    }
  }

 private:
  std::uint64_t seed_;
  std::string name_;
  std::mt19937_64 engine_;
};

}  // namespace reccs
