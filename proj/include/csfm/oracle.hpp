#pragma once

#include <atomic>
#include <cstdint>

#include "csfm/subset.hpp"

namespace csfm {

// Evaluation-oracle interface for an integer set function on a ground set of
// size n. Implementations must be deterministic and pure; the only state a
// call may touch is the evaluation counter, which increments by exactly one
// per evaluate(). Counting is relaxed-atomic so concurrent read-only workers
// can share one oracle.
class SubmodularOracle {
 public:
  virtual ~SubmodularOracle() = default;

  SubmodularOracle(const SubmodularOracle&) = delete;
  SubmodularOracle& operator=(const SubmodularOracle&) = delete;

  int n() const { return n_; }

  std::int64_t evaluate(SubsetMask x) const {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return eval(x);
  }

  std::uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }

  // A declared upper bound on max_X |f(X)|, used by the overflow guard of
  // the tie-break transform. Structural, never tight.
  virtual std::int64_t value_bound() const = 0;

 protected:
  explicit SubmodularOracle(int n) : n_(n) {}

  virtual std::int64_t eval(SubsetMask x) const = 0;

 private:
  int n_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

}  // namespace csfm
