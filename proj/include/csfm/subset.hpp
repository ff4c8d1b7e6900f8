#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "csfm/errors.hpp"

namespace csfm {

inline constexpr int kMaxGroundSetSize = 64;

// A subset of a ground set of at most 64 elements, packed into one word.
// Element i corresponds to bit i; bits at positions >= n must stay zero,
// which every operation below preserves given valid inputs.
class SubsetMask {
 public:
  constexpr SubsetMask() = default;
  constexpr explicit SubsetMask(std::uint64_t bits) : bits_(bits) {}

  static constexpr SubsetMask empty_set() { return SubsetMask(0); }

  static constexpr SubsetMask full(int n) {
    return SubsetMask(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }

  static constexpr SubsetMask single(int v) {
    return SubsetMask(std::uint64_t{1} << v);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int cardinality() const { return std::popcount(bits_); }
  constexpr bool contains(int v) const { return (bits_ >> v) & 1; }

  constexpr SubsetMask with(int v) const { return SubsetMask(bits_ | (std::uint64_t{1} << v)); }
  constexpr SubsetMask without(int v) const { return SubsetMask(bits_ & ~(std::uint64_t{1} << v)); }

  constexpr bool is_subset_of(SubsetMask other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool is_proper_subset_of(SubsetMask other) const {
    return is_subset_of(other) && bits_ != other.bits_;
  }
  constexpr bool intersects(SubsetMask other) const {
    return (bits_ & other.bits_) != 0;
  }

  // Set difference, this minus other.
  constexpr SubsetMask difference(SubsetMask other) const {
    return SubsetMask(bits_ & ~other.bits_);
  }

  // Complement within a ground set of size n.
  constexpr SubsetMask complement_in(int n) const {
    return SubsetMask(full(n).bits_ & ~bits_);
  }

  // Smallest element, only valid on a nonempty mask.
  constexpr int first_element() const { return std::countr_zero(bits_); }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(cardinality()));
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  template <class F>
  void for_each_element(F&& fn) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) fn(std::countr_zero(b));
  }

  friend constexpr SubsetMask operator|(SubsetMask a, SubsetMask b) {
    return SubsetMask(a.bits_ | b.bits_);
  }
  friend constexpr SubsetMask operator&(SubsetMask a, SubsetMask b) {
    return SubsetMask(a.bits_ & b.bits_);
  }
  friend constexpr SubsetMask operator^(SubsetMask a, SubsetMask b) {
    return SubsetMask(a.bits_ ^ b.bits_);
  }

  friend constexpr auto operator<=>(SubsetMask a, SubsetMask b) = default;

 private:
  std::uint64_t bits_ = 0;
};

// The ground set: a size plus distinct element labels. Algorithms only
// need the size; labels exist for file formats and diagnostics.
class GroundSet {
 public:
  explicit GroundSet(int n) : labels_() {
    check_size(n);
    labels_.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) labels_.push_back(std::to_string(i));
  }

  explicit GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    check_size(static_cast<int>(labels_.size()));
    for (std::size_t i = 0; i < labels_.size(); ++i)
      for (std::size_t j = i + 1; j < labels_.size(); ++j)
        if (labels_[i] == labels_[j])
          throw Error("ground set labels must be pairwise distinct: \"" + labels_[i] + "\"");
  }

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int v) const { return labels_.at(static_cast<std::size_t>(v)); }
  const std::vector<std::string>& labels() const { return labels_; }
  SubsetMask full_mask() const { return SubsetMask::full(size()); }

  // "{a,c}" style rendering for messages.
  std::string format(SubsetMask x) const {
    std::string out = "{";
    bool first = true;
    x.for_each_element([&](int v) {
      if (!first) out += ",";
      out += label(v);
      first = false;
    });
    out += "}";
    return out;
  }

 private:
  static void check_size(int n) {
    if (n < 1) throw Error("ground set must have at least one element");
    if (n > kMaxGroundSetSize) throw GroundSetTooLarge("ground set larger than 64 elements");
  }

  std::vector<std::string> labels_;
};

}  // namespace csfm

template <>
struct std::hash<csfm::SubsetMask> {
  std::size_t operator()(csfm::SubsetMask m) const noexcept {
    return std::hash<std::uint64_t>{}(m.bits());
  }
};
