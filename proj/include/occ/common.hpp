#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace occ {

using VertexId = std::uint32_t;
using ClusterId = std::uint32_t;

// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<VertexId>;

// Bad input supplied by a caller (file contents, flags, parameters).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public ParameterError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ParameterError("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A documented precondition or internal invariant was broken.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define OCC_EXPECT(cond, msg)                                    \
  do {                                                           \
    if (!(cond)) throw ::occ::ContractViolation(msg);            \
  } while (false)

inline bool contains(std::span<const VertexId> sorted, VertexId v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

inline VertexSet normalized(VertexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// Dense membership table for O(1) lookups.
inline std::vector<char> membership(std::span<const VertexId> set,
                                    std::size_t n) {
  std::vector<char> in(n, 0);
  for (VertexId v : set) {
    OCC_EXPECT(v < n, "vertex id out of range");
    in[v] = 1;
  }
  return in;
}

// SplitMix64 finalizer; used to derive order-independent per-vertex streams.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t a,
                           std::uint64_t b = 0) {
  return mix64(mix64(mix64(seed) ^ a) ^ (b * 0xd1342543de82ef95ULL));
}

// Unbiased draw in [0, bound) by rejection; independent of the standard
// library's distribution implementations so results are portable.
template <class Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  OCC_EXPECT(bound > 0, "uniform_below: empty range");
  const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= limit) return x % bound;
  }
}

template <class Rng, class T>
void shuffle(Rng& rng, std::vector<T>& items) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[uniform_below(rng, i)]);
  }
}

}  // namespace occ
