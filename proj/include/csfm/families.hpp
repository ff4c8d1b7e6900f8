#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "csfm/subset.hpp"

namespace csfm {

// Set-family machinery: ring families (lattices given by bounds plus
// implication arcs), explicit families for desk-scale validation, and the
// constraint families the solver minimizes over.

// A nonempty lattice of sets: members are exactly the X with
// forced_in <= X <= allowed that are closed under every implication arc
// (u in X forces v in X). Every union/intersection-closed nonempty family
// admits this form.
class RingFamily {
 public:
  RingFamily(int n, SubsetMask forced_in, SubsetMask allowed,
             std::vector<std::pair<int, int>> implications);

  bool member(SubsetMask x) const;

  int n() const { return n_; }
  SubsetMask forced_in() const { return forced_in_; }
  SubsetMask allowed() const { return allowed_; }
  const std::vector<std::pair<int, int>>& implications() const { return implications_; }

 private:
  int n_;
  SubsetMask forced_in_;
  SubsetMask allowed_;
  std::vector<std::pair<int, int>> implications_;
  std::vector<SubsetMask> required_;  // required_[u] = elements forced by u
};

// A deduplicated, numerically sorted list of masks.
class ExplicitFamily {
 public:
  ExplicitFamily() = default;
  ExplicitFamily(int n, std::vector<SubsetMask> members);

  bool contains(SubsetMask x) const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  int n() const { return n_; }
  const std::vector<SubsetMask>& members() const { return members_; }

 private:
  int n_ = 0;
  std::vector<SubsetMask> members_;
};

// The feasible region handed to the solver: a membership oracle for F
// together with the declared bound k on the hierarchy of 2^V \ F. The bound
// is trusted by the solver; witness partitions, when present, let verify
// mode check it exhaustively on small ground sets.
struct ConstraintFamily {
  std::function<bool(SubsetMask)> member;
  int hierarchy_bound = 0;
  std::vector<ExplicitFamily> witness_partition;  // partition of 2^V \ F, optional
};

// F = complement of the union of the given ring families; hierarchy_bound is
// the number of rings. An empty list yields the unconstrained family.
ConstraintFamily complement_of_rings(std::vector<RingFamily> rings);

// F = complement of an explicitly listed excluded family with a declared k.
ConstraintFamily complement_of_explicit(ExplicitFamily excluded, int hierarchy_bound,
                                        std::vector<ExplicitFamily> witness_partition = {});

// Exhaustive structural validators, n <= 16 (n <= 14 for the hierarchy one).
bool validate_lattice(const ExplicitFamily& family);
bool validate_intersecting(const ExplicitFamily& family);
bool validate_crossing(const ExplicitFamily& family);

// Parity: for all non-members X,Y, the union lies in the family exactly when
// the intersection does.
bool validate_parity(const ExplicitFamily& family);

// Checks the hierarchy conditions on a claimed partition: the first part is
// a lattice, and every pair inside a later part either keeps its union and
// intersection in that part or drops at least one of them into an earlier
// part. Throws OverlappingParts if the parts share a mask.
bool validate_k_hierarchical(const std::vector<ExplicitFamily>& parts);

// Smallest family containing the seed that is closed under pairwise union
// and intersection, by fixed-point iteration. n <= 12.
ExplicitFamily lattice_closure(const ExplicitFamily& seed);

// Expand a ring family into its explicit member list, n <= 16.
ExplicitFamily expand_ring(const RingFamily& ring);

// Witness partition for the union of ring families: part i holds the members
// of ring i not already covered by earlier rings.
std::vector<ExplicitFamily> union_witness_partition(const std::vector<RingFamily>& rings);

}  // namespace csfm
