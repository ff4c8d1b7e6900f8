#include "csfm/families.hpp"

#include <algorithm>
#include <string>

#include "csfm/enumerate.hpp"
#include "csfm/errors.hpp"

namespace csfm {

RingFamily::RingFamily(int n, SubsetMask forced_in, SubsetMask allowed,
                       std::vector<std::pair<int, int>> implications)
    : n_(n), forced_in_(forced_in), allowed_(allowed), implications_(std::move(implications)) {
  if (n < 1 || n > kMaxGroundSetSize)
    throw Error("ring family ground set out of range: " + std::to_string(n));
  const SubsetMask full = SubsetMask::full(n);
  if (!allowed_.is_subset_of(full) || !forced_in_.is_subset_of(full))
    throw Error("ring family bounds contain elements outside the ground set");
  if (!forced_in_.is_subset_of(allowed_))
    throw StructureViolation("ring family requires forced_in to be a subset of allowed");
  required_.assign(static_cast<std::size_t>(n), SubsetMask::empty_set());
  for (auto [u, v] : implications_) {
    if (u < 0 || u >= n || v < 0 || v >= n || u == v)
      throw Error("ring family implication endpoints out of range");
    if (!allowed_.contains(u) || !allowed_.contains(v))
      throw StructureViolation("ring family implications must stay within allowed");
    required_[static_cast<std::size_t>(u)] = required_[static_cast<std::size_t>(u)].with(v);
  }
}

bool RingFamily::member(SubsetMask x) const {
  if (!forced_in_.is_subset_of(x) || !x.is_subset_of(allowed_)) return false;
  bool ok = true;
  x.for_each_element([&](int u) {
    if (!required_[static_cast<std::size_t>(u)].is_subset_of(x)) ok = false;
  });
  return ok;
}

ExplicitFamily::ExplicitFamily(int n, std::vector<SubsetMask> members)
    : n_(n), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  const SubsetMask full = SubsetMask::full(n);
  for (SubsetMask m : members_)
    if (!m.is_subset_of(full)) throw Error("family member outside the ground set");
}

bool ExplicitFamily::contains(SubsetMask x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

ConstraintFamily complement_of_rings(std::vector<RingFamily> rings) {
  ConstraintFamily family;
  family.hierarchy_bound = static_cast<int>(rings.size());
  family.member = [rings = std::move(rings)](SubsetMask x) {
    for (const RingFamily& r : rings)
      if (r.member(x)) return false;
    return true;
  };
  return family;
}

ConstraintFamily complement_of_explicit(ExplicitFamily excluded, int hierarchy_bound,
                                        std::vector<ExplicitFamily> witness_partition) {
  ConstraintFamily family;
  family.hierarchy_bound = hierarchy_bound;
  family.witness_partition = std::move(witness_partition);
  family.member = [excluded = std::move(excluded)](SubsetMask x) { return !excluded.contains(x); };
  return family;
}

namespace {

void check_validator_cap(const ExplicitFamily& family, int cap, const char* what) {
  if (family.n() > cap)
    throw GroundSetTooLarge(std::string(what) + " validation is exhaustive, n <= " +
                            std::to_string(cap));
}

}  // namespace

bool validate_lattice(const ExplicitFamily& family) {
  check_validator_cap(family, 16, "lattice");
  const auto& m = family.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (!family.contains(m[i] | m[j]) || !family.contains(m[i] & m[j])) return false;
  return true;
}

bool validate_intersecting(const ExplicitFamily& family) {
  check_validator_cap(family, 16, "intersecting family");
  const auto& m = family.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (!m[i].intersects(m[j])) continue;
      if (!family.contains(m[i] | m[j]) || !family.contains(m[i] & m[j])) return false;
    }
  return true;
}

bool validate_crossing(const ExplicitFamily& family) {
  check_validator_cap(family, 16, "crossing family");
  const SubsetMask full = SubsetMask::full(family.n());
  const auto& m = family.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (!m[i].intersects(m[j]) || (m[i] | m[j]) == full) continue;
      if (!family.contains(m[i] | m[j]) || !family.contains(m[i] & m[j])) return false;
    }
  return true;
}

bool validate_parity(const ExplicitFamily& family) {
  check_validator_cap(family, 16, "parity family");
  std::vector<SubsetMask> outside;
  for_each_subset(family.n(), [&](SubsetMask x) {
    if (!family.contains(x)) outside.push_back(x);
  });
  for (std::size_t i = 0; i < outside.size(); ++i)
    for (std::size_t j = i; j < outside.size(); ++j) {
      const bool union_in = family.contains(outside[i] | outside[j]);
      const bool inter_in = family.contains(outside[i] & outside[j]);
      if (union_in != inter_in) return false;
    }
  return true;
}

bool validate_k_hierarchical(const std::vector<ExplicitFamily>& parts) {
  if (parts.empty()) return false;
  if (parts.front().n() > 14)
    throw GroundSetTooLarge("hierarchy validation is exhaustive, n <= 14");
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      for (SubsetMask m : parts[i].members())
        if (parts[j].contains(m))
          throw OverlappingParts("hierarchy parts must be pairwise disjoint");

  if (!validate_lattice(parts.front())) return false;

  auto in_lower = [&](SubsetMask x, std::size_t level) {
    for (std::size_t i = 0; i < level; ++i)
      if (parts[i].contains(x)) return true;
    return false;
  };

  for (std::size_t level = 1; level < parts.size(); ++level) {
    const auto& m = parts[level].members();
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        const SubsetMask uni = m[i] | m[j];
        const SubsetMask inter = m[i] & m[j];
        if (parts[level].contains(uni) && parts[level].contains(inter)) continue;
        if (in_lower(uni, level) || in_lower(inter, level)) continue;
        return false;
      }
  }
  return true;
}

ExplicitFamily lattice_closure(const ExplicitFamily& seed) {
  check_validator_cap(seed, 12, "lattice closure");
  std::vector<SubsetMask> current = seed.members();
  bool grew = true;
  while (grew) {
    grew = false;
    ExplicitFamily snapshot(seed.n(), current);
    std::vector<SubsetMask> added;
    const auto& m = snapshot.members();
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        const SubsetMask uni = m[i] | m[j];
        const SubsetMask inter = m[i] & m[j];
        if (!snapshot.contains(uni)) added.push_back(uni);
        if (!snapshot.contains(inter)) added.push_back(inter);
      }
    if (!added.empty()) {
      grew = true;
      current = m;
      current.insert(current.end(), added.begin(), added.end());
    } else {
      current = m;
    }
  }
  return ExplicitFamily(seed.n(), std::move(current));
}

ExplicitFamily expand_ring(const RingFamily& ring) {
  if (ring.n() > 16)
    throw GroundSetTooLarge("ring expansion is exhaustive, n <= 16");
  std::vector<SubsetMask> members;
  for_each_subset(ring.n(), [&](SubsetMask x) {
    if (ring.member(x)) members.push_back(x);
  });
  return ExplicitFamily(ring.n(), std::move(members));
}

std::vector<ExplicitFamily> union_witness_partition(const std::vector<RingFamily>& rings) {
  std::vector<ExplicitFamily> parts;
  for (std::size_t i = 0; i < rings.size(); ++i) {
    std::vector<SubsetMask> fresh;
    const ExplicitFamily expanded = expand_ring(rings[i]);
    for (SubsetMask m : expanded.members()) {
      bool seen = false;
      for (std::size_t j = 0; j < i; ++j)
        if (rings[j].member(m)) seen = true;
      if (!seen) fresh.push_back(m);
    }
    parts.emplace_back(rings[i].n(), std::move(fresh));
  }
  return parts;
}

}  // namespace csfm
