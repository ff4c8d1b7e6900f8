#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "csfm/oracle.hpp"
#include "csfm/subset.hpp"

namespace csfm {

// Exhaustive reference oracle. Shares only the mask type with the solver --
// no minimization logic -- so agreement between the two is real evidence.
// Everything here scans all 2^n subsets; nothing here tries to be fast.

using MemberFn = std::function<bool(SubsetMask)>;

struct BruteReport {
  bool feasible = false;  // some member exists
  std::int64_t min_value = 0;
  std::vector<SubsetMask> all_minimizers;
  std::vector<SubsetMask> minimal_minimizers;  // containment-minimal among all
};

// Exact minimum of f over the members of the family, n <= 24.
BruteReport brute_min(const SubmodularOracle& f, const MemberFn& member);

struct WitnessedMinimizer {
  SubsetMask minimizer;
  SubsetMask s;
  SubsetMask t;
};

struct StructureCheck {
  bool ok = false;
  std::vector<WitnessedMinimizer> witnesses;
  std::vector<SubsetMask> unwitnessed;
};

// For every minimizer X* of f over the family, searches all S <= X*,
// T <= V\X* with max{|S|,|T|} <= k for a box in which X* attains the brute
// minimum. n <= 10.
StructureCheck brute_check_box_witness(const SubmodularOracle& f, const MemberFn& member, int k);

// Same search, but for every containment-minimal minimizer X*, demanding a
// box whose set of containment-minimal minimizers is exactly {X*}.
StructureCheck brute_check_minimal_witness(const SubmodularOracle& f, const MemberFn& member, int k);

// Interval property of members: every X in the family admits S <= X with
// |S| <= k and [S, X] inside the family, and dually a T <= V\X with
// |T| <= k and [X, V\T] inside the family. n <= 10.
bool brute_check_interval_anchors(const MemberFn& member, int n, int k);

struct KthDistinct {
  std::vector<std::int64_t> values;    // strictly increasing
  std::vector<SubsetMask> witnesses;   // numerically smallest attaining mask
};

// First k distinct values of f over all subsets, n <= 20. Throws
// ExhaustedValues when fewer than k distinct values exist.
KthDistinct brute_kth_distinct(const SubmodularOracle& f, int k);

}  // namespace csfm
