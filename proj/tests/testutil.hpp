#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "csfm/functions.hpp"
#include "csfm/generator.hpp"
#include "csfm/oracle.hpp"
#include "csfm/subset.hpp"

namespace csfm::test {

// Lambda-backed oracle for ad-hoc test functions.
class FnOracle final : public SubmodularOracle {
 public:
  FnOracle(int n, std::function<std::int64_t(SubsetMask)> fn, std::int64_t bound)
      : SubmodularOracle(n), fn_(std::move(fn)), bound_(bound) {}

  std::int64_t value_bound() const override { return bound_; }

 protected:
  std::int64_t eval(SubsetMask x) const override { return fn_(x); }

 private:
  std::function<std::int64_t(SubsetMask)> fn_;
  std::int64_t bound_;
};

inline std::unique_ptr<SubmodularOracle> make_table(int n, std::vector<std::int64_t> values) {
  return std::make_unique<TableOracle>(TableFunction{n, std::move(values)});
}

// Seeded random submodular instances with modular shifts, one per kind.
inline std::unique_ptr<SubmodularOracle> random_shifted_cut(std::uint64_t seed, int n,
                                                            std::int64_t wmax = 10) {
  std::mt19937_64 rng(seed);
  auto base = std::make_unique<CutOracle>(random_graph(rng, n, wmax));
  return std::make_unique<ModularShiftOracle>(std::move(base), random_shift_weights(rng, n, wmax));
}

inline std::unique_ptr<SubmodularOracle> random_shifted_coverage(std::uint64_t seed, int n,
                                                                 std::int64_t wmax = 10) {
  std::mt19937_64 rng(seed);
  auto base = std::make_unique<CoverageOracle>(random_coverage(rng, n, wmax), n);
  return std::make_unique<ModularShiftOracle>(std::move(base), random_shift_weights(rng, n, wmax));
}

inline std::unique_ptr<SubmodularOracle> random_shifted_table(std::uint64_t seed, int n,
                                                              std::int64_t wmax = 10) {
  std::mt19937_64 rng(seed);
  auto base = std::make_unique<TableOracle>(random_submodular_table(rng, n, wmax));
  return std::make_unique<ModularShiftOracle>(std::move(base), random_shift_weights(rng, n, wmax));
}

inline std::unique_ptr<SubmodularOracle> random_instance(std::uint64_t seed, int n,
                                                         std::int64_t wmax = 10) {
  switch (seed % 3) {
    case 0: return random_shifted_cut(seed, n, wmax);
    case 1: return random_shifted_coverage(seed, n, wmax);
    default: return random_shifted_table(seed, n, wmax);
  }
}

}  // namespace csfm::test
