#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "csfm/errors.hpp"
#include "csfm/subset.hpp"

namespace csfm {

// Exhaustive enumeration over 2^n masks and over the disjoint (S,T) pairs
// the outer solver scans. Orders are fixed so downstream tie-breaking is
// reproducible: subsets ascend numerically, pairs sort by
// (|S|, S numeric, |T|, T numeric).

inline std::uint64_t subset_count(int n) {
  if (n < 0 || n > 63) throw GroundSetTooLarge("subset enumeration supports 0 <= n <= 63");
  return std::uint64_t{1} << n;
}

// All 2^n subsets in ascending numeric order. Exhaustive callers should
// stay at n <= 24 or so; the only hard cap is the arithmetic one.
class SubsetStream {
 public:
  explicit SubsetStream(int n) : count_(subset_count(n)) {}

  std::optional<SubsetMask> next() {
    if (next_ == count_) return std::nullopt;
    return SubsetMask(next_++);
  }

 private:
  std::uint64_t next_ = 0;
  std::uint64_t count_;
};

template <class F>
void for_each_subset(int n, F&& fn) {
  const std::uint64_t count = subset_count(n);
  for (std::uint64_t m = 0; m < count; ++m) fn(SubsetMask(m));
}

namespace detail {

// Next word with the same popcount (Gosper). Requires v != 0.
inline std::uint64_t next_same_popcount(std::uint64_t v) {
  const std::uint64_t c = v & (~v + 1);
  const std::uint64_t r = v + c;
  return r | (((v ^ r) >> 2) / c);
}

// Scatter the low bits of `packed` onto the listed positions. Positions are
// ascending, so numeric order on packed words is preserved on the result.
inline std::uint64_t scatter(std::uint64_t packed, const std::vector<int>& positions) {
  std::uint64_t out = 0;
  for (std::uint64_t b = packed; b != 0; b &= b - 1)
    out |= std::uint64_t{1} << positions[static_cast<std::size_t>(std::countr_zero(b))];
  return out;
}

}  // namespace detail

// Count of disjoint ordered pairs (S,T) with |S| <= k and |T| <= k:
// sum over s,t of C(n,s) * C(n-s,t). Throws OverflowRisk if the count
// does not fit in 64 bits.
std::uint64_t st_pair_count(int n, int k);

struct StPair {
  SubsetMask s;
  SubsetMask t;
  std::uint64_t rank = 0;  // position in the fixed enumeration order
};

// Streams every disjoint (S,T) pair with max{|S|,|T|} <= k exactly once.
class StPairStream {
 public:
  StPairStream(int n, int k);

  std::optional<StPair> next();

 private:
  bool advance_s();  // move to the next S (or the first one); false when done
  bool advance_t();  // move to the next T for the current S; false when the size class is spent

  int n_;
  int k_;
  int s_size_ = 0;
  int t_size_ = 0;
  bool done_ = false;
  bool t_fresh_ = true;
  std::uint64_t s_word_ = 0;          // current S mask
  std::uint64_t t_packed_ = 0;        // current T in packed complement coordinates
  std::vector<int> complement_pos_;   // positions of V \ S, ascending
  std::uint64_t rank_ = 0;
};

}  // namespace csfm
