#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "csfm/families.hpp"
#include "csfm/functions.hpp"
#include "csfm/subset.hpp"

namespace csfm {

// Seeded instance generation. All draws go through the helpers below on a
// mt19937_64 engine, so the same seed produces byte-identical files on any
// platform (std::uniform_int_distribution is implementation-defined and is
// deliberately avoided).

std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t bound);  // uniform-ish in [0, bound)
std::int64_t rand_range(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);  // inclusive
SubsetMask rand_subset(std::mt19937_64& rng, int n);
SubsetMask rand_subset_of(std::mt19937_64& rng, SubsetMask pool);

WeightedGraph random_graph(std::mt19937_64& rng, int n, std::int64_t weight_max);
CoverageSystem random_coverage(std::mt19937_64& rng, int n, std::int64_t weight_max);

// A submodular table built as a sum of concave functions of |X & A_j|:
// each term takes the minimum of a few integer affine functions of the
// intersection size. n <= 16.
TableFunction random_submodular_table(std::mt19937_64& rng, int n, std::int64_t weight_max);

std::vector<std::int64_t> random_shift_weights(std::mt19937_64& rng, int n, std::int64_t magnitude);

RingFamily random_ring(std::mt19937_64& rng, int n);

// Random intersecting family over n <= 12 elements, without the empty set.
// Built from lattice closures and repaired to closure under intersecting
// pairs; validate_intersecting holds on the result.
ExplicitFamily random_intersecting_family(std::mt19937_64& rng, int n);

// Random crossing family over n <= 12 elements, without the empty set or V.
ExplicitFamily random_crossing_family(std::mt19937_64& rng, int n);

struct GenParams {
  std::string kind;  // cut+rings, coverage+rings, table+intersecting, table+crossing, cut+explicit
  int n = 8;
  int k = 2;
  std::uint64_t seed = 0;
  std::int64_t weight_max = 10;
};

// Deterministic instance file for the CLI gen command. Throws Error on an
// unsupported kind. k = 0 degenerates to an unconstrained instance.
nlohmann::json generate_instance(const GenParams& params);

}  // namespace csfm
