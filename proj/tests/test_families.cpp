#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "csfm/enumerate.hpp"
#include "csfm/errors.hpp"
#include "csfm/families.hpp"
#include "csfm/functions.hpp"
#include "csfm/generator.hpp"
#include "testutil.hpp"

using namespace csfm;

namespace {

ExplicitFamily family_of(int n, std::initializer_list<std::uint64_t> masks) {
  std::vector<SubsetMask> members;
  for (std::uint64_t m : masks) members.emplace_back(m);
  return ExplicitFamily(n, std::move(members));
}

ExplicitFamily complement_family(const ExplicitFamily& family) {
  std::vector<SubsetMask> out;
  for_each_subset(family.n(), [&](SubsetMask x) {
    if (!family.contains(x)) out.push_back(x);
  });
  return ExplicitFamily(family.n(), std::move(out));
}

}  // namespace

TEST_CASE("ring membership follows bounds and implication closure") {
  SUBCASE("single arc 0 -> 1 over V = {0,1}") {
    const RingFamily r(2, SubsetMask::empty_set(), SubsetMask::full(2), {{0, 1}});
    CHECK(r.member(SubsetMask::empty_set()));
    CHECK(r.member(SubsetMask::single(1)));
    CHECK(r.member(SubsetMask::full(2)));
    CHECK_FALSE(r.member(SubsetMask::single(0)));
  }
  SUBCASE("empty bounds give the family containing only the empty set") {
    const RingFamily r(2, SubsetMask::empty_set(), SubsetMask::empty_set(), {});
    CHECK(r.member(SubsetMask::empty_set()));
    CHECK_FALSE(r.member(SubsetMask::single(0)));
    CHECK_FALSE(r.member(SubsetMask::full(2)));
  }
  SUBCASE("interval family") {
    const RingFamily r(2, SubsetMask::single(0), SubsetMask::full(2), {});
    CHECK(r.member(SubsetMask::single(0)));
    CHECK(r.member(SubsetMask::full(2)));
    CHECK_FALSE(r.member(SubsetMask::empty_set()));
    CHECK_FALSE(r.member(SubsetMask::single(1)));
  }
  SUBCASE("construction validates the representation") {
    CHECK_THROWS_AS(RingFamily(2, SubsetMask::full(2), SubsetMask::single(0), {}),
                    StructureViolation);
    CHECK_THROWS_AS(RingFamily(2, SubsetMask::empty_set(), SubsetMask::single(0), {{0, 1}}),
                    StructureViolation);
    CHECK_THROWS_AS(RingFamily(2, SubsetMask::empty_set(), SubsetMask::full(2), {{0, 0}}), Error);
  }
}

TEST_CASE("every random ring family expands to a lattice") {
  for (std::uint64_t seed = 0; seed < 110; ++seed) {
    std::mt19937_64 rng(seed);
    const int n = 2 + static_cast<int>(seed % 9);
    const RingFamily r = random_ring(rng, n);
    CAPTURE(seed);
    CHECK(validate_lattice(expand_ring(r)));
  }
}

TEST_CASE("complement of a union of rings") {
  SUBCASE("complement of {empty} is the nonempty sets") {
    std::vector<RingFamily> rings;
    rings.emplace_back(2, SubsetMask::empty_set(), SubsetMask::empty_set(),
                       std::vector<std::pair<int, int>>{});
    const ConstraintFamily f = complement_of_rings(std::move(rings));
    CHECK(f.hierarchy_bound == 1);
    CHECK_FALSE(f.member(SubsetMask::empty_set()));
    CHECK(f.member(SubsetMask::single(0)));
    CHECK(f.member(SubsetMask::full(2)));
  }
  SUBCASE("complement of {empty} and {V}") {
    std::vector<RingFamily> rings;
    rings.emplace_back(2, SubsetMask::empty_set(), SubsetMask::empty_set(),
                       std::vector<std::pair<int, int>>{});
    rings.emplace_back(2, SubsetMask::full(2), SubsetMask::full(2),
                       std::vector<std::pair<int, int>>{});
    const ConstraintFamily f = complement_of_rings(std::move(rings));
    CHECK(f.hierarchy_bound == 2);
    CHECK_FALSE(f.member(SubsetMask::empty_set()));
    CHECK_FALSE(f.member(SubsetMask::full(2)));
    CHECK(f.member(SubsetMask::single(0)));
    CHECK(f.member(SubsetMask::single(1)));
  }
  SUBCASE("two interval rings, membership matches the brute filter") {
    std::vector<RingFamily> rings;
    rings.emplace_back(2, SubsetMask::single(0), SubsetMask::full(2),
                       std::vector<std::pair<int, int>>{});  // [{0}, V]
    rings.emplace_back(2, SubsetMask::empty_set(), SubsetMask::single(1),
                       std::vector<std::pair<int, int>>{});  // [empty, {1}]
    const std::vector<RingFamily> kept = rings;
    const ConstraintFamily f = complement_of_rings(std::move(rings));
    for_each_subset(2, [&](SubsetMask x) {
      const bool excluded = kept[0].member(x) || kept[1].member(x);
      CHECK(f.member(x) == !excluded);
    });
  }
}

TEST_CASE("lattice validator") {
  CHECK(validate_lattice(family_of(2, {0b00, 0b01, 0b11})));       // chain
  CHECK_FALSE(validate_lattice(family_of(2, {0b01, 0b10})));       // union missing
  CHECK(validate_lattice(family_of(2, {})));
}

TEST_CASE("intersecting validator") {
  CHECK(validate_intersecting(family_of(2, {0b01, 0b10, 0b11})));
  // Lattices are intersecting families.
  CHECK(validate_intersecting(family_of(2, {0b00, 0b01, 0b11})));
  CHECK_FALSE(validate_intersecting(family_of(3, {0b011, 0b110})));
}

TEST_CASE("crossing validator") {
  // The only intersecting pair has union V, which is exempt.
  CHECK(validate_crossing(family_of(3, {0b011, 0b110})));
  // Any intersecting family is crossing.
  CHECK(validate_crossing(family_of(2, {0b01, 0b10, 0b11})));
  // Over a larger ground set the same pair loses its exemption.
  CHECK_FALSE(validate_crossing(family_of(4, {0b0011, 0b0110})));
  CHECK(validate_crossing(family_of(4, {0b0011, 0b0110, 0b0010, 0b0111})));
}

TEST_CASE("parity validator") {
  SUBCASE("odd-cardinality sets form a parity family") {
    for (int n = 1; n <= 8; ++n) {
      std::vector<SubsetMask> odd;
      for_each_subset(n, [&](SubsetMask x) {
        if (x.cardinality() % 2 == 1) odd.push_back(x);
      });
      CHECK(validate_parity(ExplicitFamily(n, std::move(odd))));
    }
  }
  SUBCASE("complement of a random ring family is a parity family") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      std::mt19937_64 rng(seed);
      const int n = 2 + static_cast<int>(seed % 7);
      const ExplicitFamily lattice = expand_ring(random_ring(rng, n));
      CAPTURE(seed);
      CHECK(validate_parity(complement_family(lattice)));
    }
  }
  SUBCASE("tiny hand cases over V = {0,1}") {
    CHECK(validate_parity(family_of(2, {0b01})));
    // F = {empty}: for non-members {0} and {1}, the union {0,1} is outside F
    // while the intersection (empty) is inside, so parity fails.
    CHECK_FALSE(validate_parity(family_of(2, {0b00})));
  }
}

TEST_CASE("hierarchy validator on the canonical constructions") {
  SUBCASE("intersecting family plus the empty set, split in two levels") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      std::mt19937_64 rng(seed);
      const int n = 3 + static_cast<int>(seed % 6);
      const ExplicitFamily g = random_intersecting_family(rng, n);
      std::vector<SubsetMask> upper;
      for (SubsetMask m : g.members())
        if (!m.empty()) upper.push_back(m);
      std::vector<ExplicitFamily> parts;
      parts.push_back(family_of(n, {0b0}));
      parts.emplace_back(n, std::move(upper));
      CAPTURE(seed);
      CHECK(validate_k_hierarchical(parts));
    }
  }
  SUBCASE("crossing family plus empty and V") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      std::mt19937_64 rng(seed);
      const int n = 3 + static_cast<int>(seed % 6);
      const ExplicitFamily g = random_crossing_family(rng, n);
      const SubsetMask full = SubsetMask::full(n);
      std::vector<SubsetMask> upper;
      for (SubsetMask m : g.members())
        if (!m.empty() && m != full) upper.push_back(m);
      std::vector<ExplicitFamily> parts;
      parts.push_back(ExplicitFamily(n, {SubsetMask::empty_set(), full}));
      parts.emplace_back(n, std::move(upper));
      CAPTURE(seed);
      CHECK(validate_k_hierarchical(parts));
    }
  }
  SUBCASE("union of ring families, partitioned by first appearance") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      std::mt19937_64 rng(seed);
      const int n = 3 + static_cast<int>(seed % 6);
      std::vector<RingFamily> rings;
      const int k = 1 + static_cast<int>(seed % 3);
      for (int i = 0; i < k; ++i) rings.push_back(random_ring(rng, n));
      CAPTURE(seed);
      CHECK(validate_k_hierarchical(union_witness_partition(rings)));
    }
  }
  SUBCASE("value level sets of a submodular function") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const int n = 3 + static_cast<int>(seed % 5);
      auto f = csfm::test::random_instance(seed, n);
      // Partition the lowest four value classes.
      std::vector<std::int64_t> values;
      for_each_subset(n, [&](SubsetMask x) { values.push_back(f->evaluate(x)); });
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      const std::size_t levels = std::min<std::size_t>(4, values.size());
      std::vector<ExplicitFamily> parts;
      for (std::size_t i = 0; i < levels; ++i) {
        std::vector<SubsetMask> level;
        for_each_subset(n, [&](SubsetMask x) {
          if (f->evaluate(x) == values[i]) level.push_back(x);
        });
        parts.emplace_back(n, std::move(level));
      }
      CAPTURE(seed);
      CHECK(validate_k_hierarchical(parts));
    }
  }
  SUBCASE("overlapping parts are rejected") {
    std::vector<ExplicitFamily> parts{family_of(2, {0b00, 0b01}), family_of(2, {0b01})};
    CHECK_THROWS_AS(validate_k_hierarchical(parts), OverlappingParts);
  }
  SUBCASE("a planted closure violation is detected") {
    // Chain lattice with its middle union removed is no longer a lattice.
    std::vector<ExplicitFamily> parts{family_of(3, {0b001, 0b010})};
    CHECK_FALSE(validate_k_hierarchical(parts));
  }
}

TEST_CASE("lattice closure") {
  const ExplicitFamily closed = lattice_closure(family_of(2, {0b01, 0b10}));
  CHECK(closed.size() == 4);
  CHECK(closed.contains(SubsetMask::empty_set()));
  CHECK(closed.contains(SubsetMask::full(2)));
  CHECK(validate_lattice(closed));

  const ExplicitFamily chain = family_of(3, {0b000, 0b001, 0b011});
  CHECK(lattice_closure(chain).members() == chain.members());

  CHECK(lattice_closure(ExplicitFamily(3, {})).empty());
}

TEST_CASE("random intersecting and crossing families validate") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    std::mt19937_64 rng(seed);
    const int n = 3 + static_cast<int>(seed % 8);
    CAPTURE(seed);
    CHECK(validate_intersecting(random_intersecting_family(rng, n)));
    CHECK(validate_crossing(random_crossing_family(rng, n)));
  }
}
