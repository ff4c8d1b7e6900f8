#include "csfm/generator.hpp"

#include <algorithm>

#include "csfm/errors.hpp"
#include "csfm/instance.hpp"

namespace csfm {

using nlohmann::json;

std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t bound) {
  // Plain modulo: the tiny bias is irrelevant for test instances and the
  // result is identical everywhere.
  return bound == 0 ? 0 : rng() % bound;
}

std::int64_t rand_range(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rand_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

SubsetMask rand_subset(std::mt19937_64& rng, int n) {
  return SubsetMask(rng() & SubsetMask::full(n).bits());
}

SubsetMask rand_subset_of(std::mt19937_64& rng, SubsetMask pool) {
  return SubsetMask(rng() & pool.bits());
}

WeightedGraph random_graph(std::mt19937_64& rng, int n, std::int64_t weight_max) {
  WeightedGraph g;
  g.n = n;
  g.directed = rand_below(rng, 4) == 0;  // mostly undirected
  if (n >= 2) {
    const std::uint64_t edges = static_cast<std::uint64_t>(n) + rand_below(rng, static_cast<std::uint64_t>(n) + 1);
    for (std::uint64_t i = 0; i < edges; ++i) {
      const int u = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(n)));
      int v = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(n) - 1));
      if (v >= u) ++v;
      g.edges.push_back({u, v, rand_range(rng, 0, weight_max)});
    }
  }
  return g;
}

CoverageSystem random_coverage(std::mt19937_64& rng, int n, std::int64_t weight_max) {
  CoverageSystem c;
  const int universe = n + static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(n) + 1));
  for (int i = 0; i < universe; ++i) c.universe_weights.push_back(rand_range(rng, 0, weight_max));
  c.incidence.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const std::uint64_t degree = 1 + rand_below(rng, 3);
    for (std::uint64_t j = 0; j < degree; ++j)
      c.incidence[static_cast<std::size_t>(v)].push_back(
          static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(universe))));
  }
  return c;
}

TableFunction random_submodular_table(std::mt19937_64& rng, int n, std::int64_t weight_max) {
  if (n > 16) throw GroundSetTooLarge("random tables support n <= 16");
  TableFunction t;
  t.n = n;
  t.values.assign(std::size_t{1} << n, 0);

  const int terms = 1 + static_cast<int>(rand_below(rng, 3));
  for (int term = 0; term < terms; ++term) {
    const SubsetMask support = rand_subset(rng, n);
    // Concave piecewise-linear in s = |X & support|: min of a few integer
    // lines with decreasing slopes.
    const int lines = 2 + static_cast<int>(rand_below(rng, 2));
    std::vector<std::int64_t> slope(static_cast<std::size_t>(lines)), offset(static_cast<std::size_t>(lines));
    std::int64_t prev_slope = rand_range(rng, 0, weight_max);
    for (int l = 0; l < lines; ++l) {
      slope[static_cast<std::size_t>(l)] = prev_slope;
      offset[static_cast<std::size_t>(l)] = rand_range(rng, 0, weight_max * n);
      prev_slope -= rand_range(rng, 0, weight_max);
    }
    for (std::uint64_t m = 0; m < t.values.size(); ++m) {
      const int s = (SubsetMask(m) & support).cardinality();
      std::int64_t best = slope[0] * s + offset[0];
      for (int l = 1; l < lines; ++l)
        best = std::min(best, slope[static_cast<std::size_t>(l)] * s + offset[static_cast<std::size_t>(l)]);
      t.values[m] += best;
    }
  }
  return t;
}

std::vector<std::int64_t> random_shift_weights(std::mt19937_64& rng, int n, std::int64_t magnitude) {
  std::vector<std::int64_t> w(static_cast<std::size_t>(n));
  for (auto& x : w) x = rand_range(rng, -magnitude, magnitude);
  return w;
}

RingFamily random_ring(std::mt19937_64& rng, int n) {
  // Sparse forced-in set, a generous allowed set, and a handful of arcs over
  // a random order so the implication graph is acyclic.
  SubsetMask forced = rand_subset(rng, n) & rand_subset(rng, n) & rand_subset(rng, n);
  SubsetMask allowed = forced | rand_subset(rng, n) | rand_subset(rng, n);
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(rand_below(rng, static_cast<std::uint64_t>(i) + 1))]);

  std::vector<int> pool = allowed.elements();
  std::vector<std::pair<int, int>> arcs;
  if (pool.size() >= 2) {
    const std::uint64_t count = rand_below(rng, static_cast<std::uint64_t>(n));
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    for (std::uint64_t i = 0; i < count; ++i) {
      const int a = pool[rand_below(rng, pool.size())];
      const int b = pool[rand_below(rng, pool.size())];
      if (a == b) continue;
      if (pos[static_cast<std::size_t>(a)] < pos[static_cast<std::size_t>(b)])
        arcs.emplace_back(a, b);
      else
        arcs.emplace_back(b, a);
    }
  }
  return RingFamily(n, forced, allowed, std::move(arcs));
}

namespace {

// Closure under the repair rule: for every pair that the predicate marks as
// obligated, add the missing union and intersection until stable.
template <class Obligated>
ExplicitFamily repair_closure(int n, std::vector<SubsetMask> members, Obligated&& obligated) {
  bool grew = true;
  while (grew) {
    grew = false;
    ExplicitFamily snapshot(n, members);
    std::vector<SubsetMask> added;
    const auto& m = snapshot.members();
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        if (!obligated(m[i], m[j])) continue;
        if (!snapshot.contains(m[i] | m[j])) added.push_back(m[i] | m[j]);
        if (!snapshot.contains(m[i] & m[j])) added.push_back(m[i] & m[j]);
      }
    members = m;
    if (!added.empty()) {
      grew = true;
      members.insert(members.end(), added.begin(), added.end());
    }
  }
  return ExplicitFamily(n, std::move(members));
}

std::vector<SubsetMask> random_seed_sets(std::mt19937_64& rng, int n) {
  std::vector<SubsetMask> seeds;
  const std::uint64_t count = 2 + rand_below(rng, 4);
  for (std::uint64_t i = 0; i < count; ++i) {
    SubsetMask s = rand_subset(rng, n);
    if (!s.empty()) seeds.push_back(s);
  }
  return seeds;
}

}  // namespace

ExplicitFamily random_intersecting_family(std::mt19937_64& rng, int n) {
  if (n > 12) throw GroundSetTooLarge("explicit family generation supports n <= 12");
  ExplicitFamily family =
      repair_closure(n, random_seed_sets(rng, n),
                     [](SubsetMask a, SubsetMask b) { return a.intersects(b); });
  // Strip the empty set; the closure rule never forces it back.
  std::vector<SubsetMask> members;
  for (SubsetMask m : family.members())
    if (!m.empty()) members.push_back(m);
  return ExplicitFamily(n, std::move(members));
}

ExplicitFamily random_crossing_family(std::mt19937_64& rng, int n) {
  if (n > 12) throw GroundSetTooLarge("explicit family generation supports n <= 12");
  const SubsetMask full = SubsetMask::full(n);
  ExplicitFamily family = repair_closure(
      n, random_seed_sets(rng, n),
      [full](SubsetMask a, SubsetMask b) { return a.intersects(b) && (a | b) != full; });
  std::vector<SubsetMask> members;
  for (SubsetMask m : family.members())
    if (!m.empty() && m != full) members.push_back(m);
  return ExplicitFamily(n, std::move(members));
}

namespace {

json graph_to_json(const WeightedGraph& g) {
  json fn;
  fn["kind"] = "cut";
  fn["directed"] = g.directed;
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back({e.u, e.v, e.w});
  fn["edges"] = edges;
  return fn;
}

json coverage_to_json(const CoverageSystem& c) {
  json fn;
  fn["kind"] = "coverage";
  fn["universe_weights"] = c.universe_weights;
  fn["incidence"] = c.incidence;
  return fn;
}

json table_to_json(const TableFunction& t) {
  json fn;
  fn["kind"] = "table";
  fn["values"] = t.values;
  return fn;
}

json shifted(json base, const std::vector<std::int64_t>& weights) {
  json fn;
  fn["kind"] = "modular_shift";
  fn["base"] = std::move(base);
  fn["weights"] = weights;
  return fn;
}

json ring_to_json(const RingFamily& r) {
  json out;
  out["forced_in"] = mask_to_json(r.forced_in());
  out["allowed"] = mask_to_json(r.allowed());
  json arcs = json::array();
  for (auto [u, v] : r.implications()) arcs.push_back({u, v});
  out["implications"] = arcs;
  return out;
}

json family_to_json(const ExplicitFamily& family) {
  json out = json::array();
  for (SubsetMask m : family.members()) out.push_back(mask_to_json(m));
  return out;
}

std::int64_t structural_bound(const json& fn) {
  const std::string kind = fn.at("kind").get<std::string>();
  if (kind == "cut") {
    std::int64_t total = 0;
    for (const auto& e : fn.at("edges")) total += e[2].get<std::int64_t>();
    return total;
  }
  if (kind == "coverage") {
    std::int64_t total = 0;
    for (const auto& w : fn.at("universe_weights")) total += w.get<std::int64_t>();
    return total;
  }
  if (kind == "table") {
    std::int64_t best = 0;
    for (const auto& v : fn.at("values")) {
      const std::int64_t x = v.get<std::int64_t>();
      best = std::max(best, x < 0 ? -x : x);
    }
    return best;
  }
  std::int64_t total = structural_bound(fn.at("base"));
  for (const auto& w : fn.at("weights")) {
    const std::int64_t x = w.get<std::int64_t>();
    total += x < 0 ? -x : x;
  }
  return total;
}

}  // namespace

json generate_instance(const GenParams& params) {
  if (params.n < 1 || params.n > kMaxGroundSetSize) throw Error("generator needs 1 <= n <= 64");
  if (params.k < 0) throw Error("generator needs k >= 0");
  std::mt19937_64 rng(params.seed);

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["n"] = params.n;

  json function;
  json constraint;
  int k = params.k;

  const bool want_cut = params.kind.rfind("cut", 0) == 0;

  if (params.kind == "cut+rings" || params.kind == "coverage+rings") {
    function = want_cut ? graph_to_json(random_graph(rng, params.n, params.weight_max))
                        : coverage_to_json(random_coverage(rng, params.n, params.weight_max));
    function = shifted(std::move(function), random_shift_weights(rng, params.n, params.weight_max));
    if (k == 0) {
      constraint["kind"] = "none";
    } else {
      constraint["kind"] = "complement_of_rings";
      json rings = json::array();
      for (int i = 0; i < k; ++i) rings.push_back(ring_to_json(random_ring(rng, params.n)));
      constraint["rings"] = rings;
    }
  } else if (params.kind == "table+intersecting" || params.kind == "table+crossing") {
    function = table_to_json(random_submodular_table(rng, params.n, params.weight_max));
    function = shifted(std::move(function), random_shift_weights(rng, params.n, params.weight_max));
    if (k == 0) {
      constraint["kind"] = "none";
    } else {
      k = 2;
      const bool crossing = params.kind == "table+crossing";
      constraint["kind"] = crossing ? "complement_of_crossing" : "complement_of_intersecting";
      constraint["members"] = family_to_json(crossing ? random_crossing_family(rng, params.n)
                                                      : random_intersecting_family(rng, params.n));
    }
  } else if (params.kind == "cut+explicit") {
    if (params.n > 14) throw Error("explicit constraints support n <= 14");
    function = graph_to_json(random_graph(rng, params.n, params.weight_max));
    function = shifted(std::move(function), random_shift_weights(rng, params.n, params.weight_max));
    if (k == 0) {
      constraint["kind"] = "none";
    } else {
      std::vector<RingFamily> rings;
      for (int i = 0; i < k; ++i) rings.push_back(random_ring(rng, params.n));
      std::vector<SubsetMask> excluded;
      for (const RingFamily& r : rings) {
        const ExplicitFamily expanded = expand_ring(r);
        excluded.insert(excluded.end(), expanded.members().begin(), expanded.members().end());
      }
      constraint["kind"] = "explicit";
      constraint["excluded"] = family_to_json(ExplicitFamily(params.n, std::move(excluded)));
      json parts = json::array();
      for (const ExplicitFamily& part : union_witness_partition(rings))
        parts.push_back(family_to_json(part));
      constraint["witness_partition"] = parts;
    }
  } else {
    throw Error("unsupported generator kind \"" + params.kind + "\"");
  }

  doc["function"] = function;
  doc["constraint"] = constraint;
  doc["k"] = constraint["kind"] == "none" ? 0 : k;
  doc["value_bound"] = structural_bound(function);
  return doc;
}

}  // namespace csfm
