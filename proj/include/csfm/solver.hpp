#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "csfm/families.hpp"
#include "csfm/oracle.hpp"
#include "csfm/sfm.hpp"
#include "csfm/subset.hpp"

namespace csfm {

// The outer enumeration solver: minimize an integer submodular f over the
// complement of a k-hierarchical lattice by scanning every disjoint (S,T)
// with max{|S|,|T|} <= k, taking the minimal minimizer of f over each box,
// and keeping the best feasible candidate. Wrappers cover complements of
// intersecting and crossing families and the k-th smallest value driver.

enum class SolveStatus { Optimal, Infeasible, NumericalStall };

enum class Engine {
  Auto,   // min-norm point, falling back to a box scan on stall when n <= 24
  Wolfe,  // min-norm point only; stalls surface in the report status
  Brute,  // exhaustive box scans, n <= 24
};

struct SolveOptions {
  Engine engine = Engine::Auto;
  int workers = 1;          // (S,T) chunks processed concurrently
  bool early_exit = false;  // stop once a feasible candidate hits the unconstrained minimum
  SfmOptions sfm;
};

struct SolveReport {
  SolveStatus status = SolveStatus::Infeasible;
  SubsetMask minimizer;          // meaningful when status == Optimal
  std::int64_t value = 0;
  std::uint64_t candidates_examined = 0;
  std::uint64_t feasible_candidates = 0;
  std::uint64_t oracle_calls = 0;
  double wall_ms = 0.0;
};

// The enumeration driver. The declared hierarchy bound of the family is trusted;
// every candidate is membership-checked anyway, so a wrong declaration
// degrades to a sound heuristic rather than an unsound answer. Ties among
// equally good feasible candidates go to the earliest (S,T) in enumeration
// order. Throws InvalidBound when the declared bound exceeds n.
SolveReport minimize_over_hierarchical_complement(const SubmodularOracle& f,
                                                  const ConstraintFamily& family,
                                                  const SolveOptions& options = {});

// Minimize f over 2^V minus an intersecting family. Adjoining the empty set
// makes the excluded family 2-hierarchical; when the empty set was not
// excluded to begin with, the wrapper compares the restricted optimum
// against f(empty). The explicit overload validates the family (n <= 14)
// and throws StructureViolation on failure; the oracle overload trusts it.
SolveReport minimize_over_intersecting_complement(const SubmodularOracle& f,
                                                  const ExplicitFamily& family,
                                                  const SolveOptions& options = {});
SolveReport minimize_over_intersecting_complement(const SubmodularOracle& f,
                                                  const std::function<bool(SubsetMask)>& member,
                                                  const SolveOptions& options = {});

// Same for a crossing family, adjoining both the empty set and V.
SolveReport minimize_over_crossing_complement(const SubmodularOracle& f,
                                              const ExplicitFamily& family,
                                              const SolveOptions& options = {});
SolveReport minimize_over_crossing_complement(const SubmodularOracle& f,
                                              const std::function<bool(SubsetMask)>& member,
                                              const SolveOptions& options = {});

struct KthSmallestResult {
  std::vector<std::int64_t> values;   // strictly increasing distinct values
  std::vector<SubsetMask> witnesses;  // f(witnesses[i]) == values[i]
  std::uint64_t oracle_calls = 0;
};

// The first k distinct values of f with witnesses. Value i+1 is found by
// minimizing over {X : f(X) > values[i]}, whose excluded family -- the sets
// at the first i distinct values -- is an i-hierarchical lattice. Throws
// ExhaustedValues when fewer than k distinct values exist and NumericalStall
// if an inner solve stalls.
KthSmallestResult kth_smallest(const SubmodularOracle& f, int k, const SolveOptions& options = {});

}  // namespace csfm
