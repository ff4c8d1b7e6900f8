#include "csfm/enumerate.hpp"

#include <algorithm>

namespace csfm {

namespace {

std::uint64_t first_combo(int size) {
  if (size <= 0) return 0;
  if (size >= 64) return ~std::uint64_t{0};
  return (std::uint64_t{1} << size) - 1;
}

std::uint64_t last_combo(int width, int size) {
  return first_combo(size) << (width - size);
}

void check_nk(int n, int k) {
  if (n < 0 || n > kMaxGroundSetSize)
    throw GroundSetTooLarge("pair enumeration needs 0 <= n <= 64");
  if (k < 0 || k > n) throw InvalidBound("pair enumeration needs 0 <= k <= n");
}

}  // namespace

std::uint64_t st_pair_count(int n, int k) {
  check_nk(n, k);
  // Pascal triangle up to n; every entry fits in 64 bits for n <= 64.
  std::vector<std::vector<std::uint64_t>> binom(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    binom[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i) + 1, 1);
    for (int j = 1; j < i; ++j)
      binom[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          binom[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
          binom[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
  }
  unsigned __int128 total = 0;
  for (int s = 0; s <= k; ++s)
    for (int t = 0; t <= std::min(k, n - s); ++t)
      total += static_cast<unsigned __int128>(binom[static_cast<std::size_t>(n)][static_cast<std::size_t>(s)]) *
               binom[static_cast<std::size_t>(n - s)][static_cast<std::size_t>(t)];
  if (total > static_cast<unsigned __int128>(~std::uint64_t{0}))
    throw OverflowRisk("(S,T) pair count exceeds 64 bits");
  return static_cast<std::uint64_t>(total);
}

StPairStream::StPairStream(int n, int k) : n_(n), k_(k) {
  check_nk(n, k);
  complement_pos_ = SubsetMask::full(n).elements();
}

std::optional<StPair> StPairStream::next() {
  if (done_) return std::nullopt;
  StPair out{SubsetMask(s_word_), SubsetMask(detail::scatter(t_packed_, complement_pos_)), rank_++};

  if (!advance_t()) {
    if (!advance_s()) {
      done_ = true;
    } else {
      t_size_ = 0;
      t_packed_ = 0;
    }
  }
  return out;
}

bool StPairStream::advance_t() {
  const int m = n_ - s_size_;
  if (t_size_ > 0 && t_packed_ != last_combo(m, t_size_)) {
    t_packed_ = detail::next_same_popcount(t_packed_);
    return true;
  }
  if (t_size_ < std::min(k_, m)) {
    ++t_size_;
    t_packed_ = first_combo(t_size_);
    return true;
  }
  return false;
}

bool StPairStream::advance_s() {
  if (s_size_ > 0 && s_word_ != last_combo(n_, s_size_)) {
    s_word_ = detail::next_same_popcount(s_word_);
  } else {
    ++s_size_;
    if (s_size_ > k_) return false;
    s_word_ = first_combo(s_size_);
  }
  complement_pos_ = SubsetMask(s_word_).complement_in(n_).elements();
  return true;
}

}  // namespace csfm
