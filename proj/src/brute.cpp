#include "csfm/brute.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "csfm/enumerate.hpp"
#include "csfm/errors.hpp"

namespace csfm {

namespace {

void check_cap(int n, int cap, const char* what) {
  if (n > cap)
    throw GroundSetTooLarge(std::string(what) + " scans all subsets, n <= " + std::to_string(cap));
}

std::vector<std::int64_t> value_table(const SubmodularOracle& f) {
  std::vector<std::int64_t> val(std::size_t{1} << f.n());
  for_each_subset(f.n(), [&](SubsetMask x) { val[x.bits()] = f.evaluate(x); });
  return val;
}

std::vector<SubsetMask> containment_minimal(const std::vector<SubsetMask>& sets) {
  std::vector<SubsetMask> out;
  for (SubsetMask x : sets) {
    bool minimal = true;
    for (SubsetMask y : sets)
      if (y.is_proper_subset_of(x)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(x);
  }
  return out;
}

// Minimum of the cached values over the box S <= X <= V\T.
std::int64_t box_min_value(const std::vector<std::int64_t>& val, int n, SubsetMask s, SubsetMask t) {
  const std::uint64_t rest = (s | t).complement_in(n).bits();
  std::int64_t best = val[s.bits()];
  // Enumerate submasks of `rest` descending, then OR in the forced part.
  for (std::uint64_t sub = rest; sub != 0; sub = (sub - 1) & rest)
    best = std::min(best, val[sub | s.bits()]);
  return best;
}

std::vector<SubsetMask> box_minimizers(const std::vector<std::int64_t>& val, int n, SubsetMask s,
                                       SubsetMask t) {
  const std::int64_t best = box_min_value(val, n, s, t);
  const std::uint64_t rest = (s | t).complement_in(n).bits();
  std::vector<SubsetMask> out;
  std::uint64_t sub = rest;
  while (true) {
    if (val[sub | s.bits()] == best) out.push_back(SubsetMask(sub | s.bits()));
    if (sub == 0) break;
    sub = (sub - 1) & rest;
  }
  return out;
}

template <class Accept>
StructureCheck check_witnesses(const SubmodularOracle& f, const MemberFn& member, int k,
                               bool only_minimal, Accept&& accept) {
  const int n = f.n();
  check_cap(n, 10, "witness check");
  const std::vector<std::int64_t> val = value_table(f);

  std::vector<SubsetMask> minimizers;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for_each_subset(n, [&](SubsetMask x) {
    if (!member(x)) return;
    if (val[x.bits()] < best) {
      best = val[x.bits()];
      minimizers.clear();
    }
    if (val[x.bits()] == best) minimizers.push_back(x);
  });
  if (only_minimal) minimizers = containment_minimal(minimizers);

  StructureCheck out;
  out.ok = true;
  for (SubsetMask xstar : minimizers) {
    bool witnessed = false;
    const std::uint64_t inside = xstar.bits();
    const std::uint64_t outside = xstar.complement_in(n).bits();
    for (std::uint64_t sb = inside;; sb = (sb - 1) & inside) {
      if (std::popcount(sb) <= k) {
        for (std::uint64_t tb = outside;; tb = (tb - 1) & outside) {
          if (std::popcount(tb) <= k &&
              accept(val, n, xstar, SubsetMask(sb), SubsetMask(tb))) {
            out.witnesses.push_back({xstar, SubsetMask(sb), SubsetMask(tb)});
            witnessed = true;
            break;
          }
          if (tb == 0) break;
        }
      }
      if (witnessed || sb == 0) break;
    }
    if (!witnessed) {
      out.ok = false;
      out.unwitnessed.push_back(xstar);
    }
  }
  return out;
}

}  // namespace

BruteReport brute_min(const SubmodularOracle& f, const MemberFn& member) {
  check_cap(f.n(), 24, "brute minimization");
  BruteReport out;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for_each_subset(f.n(), [&](SubsetMask x) {
    if (!member(x)) return;
    const std::int64_t v = f.evaluate(x);
    if (v < best) {
      best = v;
      out.all_minimizers.clear();
    }
    if (v == best) out.all_minimizers.push_back(x);
  });
  out.feasible = !out.all_minimizers.empty();
  out.min_value = out.feasible ? best : 0;
  out.minimal_minimizers = containment_minimal(out.all_minimizers);
  return out;
}

StructureCheck brute_check_box_witness(const SubmodularOracle& f, const MemberFn& member, int k) {
  return check_witnesses(f, member, k, /*only_minimal=*/false,
                         [](const std::vector<std::int64_t>& val, int n, SubsetMask xstar,
                            SubsetMask s, SubsetMask t) {
                           return box_min_value(val, n, s, t) == val[xstar.bits()];
                         });
}

StructureCheck brute_check_minimal_witness(const SubmodularOracle& f, const MemberFn& member, int k) {
  return check_witnesses(f, member, k, /*only_minimal=*/true,
                         [](const std::vector<std::int64_t>& val, int n, SubsetMask xstar,
                            SubsetMask s, SubsetMask t) {
                           const std::vector<SubsetMask> minimal =
                               containment_minimal(box_minimizers(val, n, s, t));
                           return minimal.size() == 1 && minimal.front() == xstar;
                         });
}

namespace {

// Anchor direction for one member X: some S <= X with |S| <= k such that no
// set in [S, X] leaves the family. anyBad[Y] over the sublattice of X is
// computed bottom-up from supersets.
bool interval_anchor_exists(const std::vector<char>& outside, SubsetMask x, int k,
                            std::vector<char>& any_bad) {
  const std::uint64_t xb = x.bits();
  std::uint64_t sub = xb;
  while (true) {
    char bad = outside[sub];
    if (!bad) {
      std::uint64_t grow = xb & ~sub;
      for (std::uint64_t b = grow; b != 0; b &= b - 1) {
        const std::uint64_t up = sub | (b & (~b + 1));
        if (any_bad[up]) {
          bad = 1;
          break;
        }
      }
    }
    any_bad[sub] = bad;
    if (sub == 0) break;
    sub = (sub - 1) & xb;
  }
  std::uint64_t s = xb;
  while (true) {
    if (std::popcount(s) <= k && !any_bad[s]) return true;
    if (s == 0) break;
    s = (s - 1) & xb;
  }
  return false;
}

}  // namespace

bool brute_check_interval_anchors(const MemberFn& member, int n, int k) {
  check_cap(n, 10, "anchor check");
  const std::size_t size = std::size_t{1} << n;
  std::vector<char> outside(size), outside_flipped(size);
  const std::uint64_t full = SubsetMask::full(n).bits();
  for (std::uint64_t m = 0; m < size; ++m) {
    outside[m] = member(SubsetMask(m)) ? 0 : 1;
    outside_flipped[m ^ full] = outside[m];
  }
  std::vector<char> scratch(size);
  for (std::uint64_t m = 0; m < size; ++m) {
    if (outside[m]) continue;
    const SubsetMask x(m);
    if (!interval_anchor_exists(outside, x, k, scratch)) return false;
    // The dual direction is the same search on the complemented family.
    if (!interval_anchor_exists(outside_flipped, SubsetMask(m ^ full), k, scratch)) return false;
  }
  return true;
}

KthDistinct brute_kth_distinct(const SubmodularOracle& f, int k) {
  check_cap(f.n(), 20, "k-th smallest scan");
  if (k < 1) throw Error("k must be at least 1");
  const std::vector<std::int64_t> val = value_table(f);
  std::vector<std::int64_t> sorted = val;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (static_cast<int>(sorted.size()) < k)
    throw ExhaustedValues("only " + std::to_string(sorted.size()) + " distinct values exist",
                          static_cast<int>(sorted.size()));
  KthDistinct out;
  out.values.assign(sorted.begin(), sorted.begin() + k);
  for (std::int64_t target : out.values)
    for (std::uint64_t m = 0;; ++m)
      if (val[m] == target) {
        out.witnesses.push_back(SubsetMask(m));
        break;
      }
  return out;
}

}  // namespace csfm
