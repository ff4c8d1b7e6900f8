#include "csfm/functions.hpp"

#include <string>

#include "csfm/enumerate.hpp"
#include "csfm/errors.hpp"

namespace csfm {

void validate_graph(const WeightedGraph& g) {
  if (g.n < 1 || g.n > kMaxGroundSetSize)
    throw Error("graph vertex count out of range: " + std::to_string(g.n));
  for (const auto& e : g.edges) {
    if (e.u < 0 || e.u >= g.n || e.v < 0 || e.v >= g.n)
      throw Error("edge endpoint out of range");
    if (e.u == e.v) throw Error("self-loops are not allowed");
    if (e.w < 0) throw Error("edge weights must be nonnegative");
  }
}

std::int64_t cut_value(const WeightedGraph& g, SubsetMask x) {
  std::int64_t total = 0;
  if (g.directed) {
    for (const auto& e : g.edges)
      if (x.contains(e.u) && !x.contains(e.v)) total += e.w;
  } else {
    for (const auto& e : g.edges)
      if (x.contains(e.u) != x.contains(e.v)) total += e.w;
  }
  return total;
}

void validate_coverage(const CoverageSystem& c) {
  const int universe = static_cast<int>(c.universe_weights.size());
  for (std::int64_t w : c.universe_weights)
    if (w < 0) throw Error("universe weights must be nonnegative");
  for (const auto& items : c.incidence)
    for (int item : items)
      if (item < 0 || item >= universe) throw Error("incidence entry outside the universe");
}

std::int64_t coverage_value(const CoverageSystem& c, SubsetMask x) {
  std::vector<bool> covered(c.universe_weights.size(), false);
  x.for_each_element([&](int v) {
    for (int item : c.incidence[static_cast<std::size_t>(v)])
      covered[static_cast<std::size_t>(item)] = true;
  });
  std::int64_t total = 0;
  for (std::size_t i = 0; i < covered.size(); ++i)
    if (covered[i]) total += c.universe_weights[i];
  return total;
}

void validate_table(const TableFunction& t) {
  if (t.n < 0 || t.n > 20) throw GroundSetTooLarge("table functions support n <= 20");
  if (t.values.size() != (std::size_t{1} << t.n))
    throw Error("table must list exactly 2^n values");
}

std::int64_t table_value(const TableFunction& t, SubsetMask x) {
  if (x.bits() >= (std::uint64_t{1} << t.n))
    throw Error("mask outside the table's ground set");
  return t.values[x.bits()];
}

CutOracle::CutOracle(WeightedGraph g) : SubmodularOracle(g.n), graph_(std::move(g)) {
  validate_graph(graph_);
  bound_ = 0;
  for (const auto& e : graph_.edges) bound_ += e.w;
}

CoverageOracle::CoverageOracle(CoverageSystem c, int n)
    : SubmodularOracle(n), system_(std::move(c)) {
  if (static_cast<int>(system_.incidence.size()) != n)
    throw Error("coverage incidence must have one entry per ground element");
  validate_coverage(system_);
  bound_ = 0;
  for (std::int64_t w : system_.universe_weights) bound_ += w;
}

TableOracle::TableOracle(TableFunction t) : SubmodularOracle(t.n), table_(std::move(t)) {
  validate_table(table_);
  bound_ = 0;
  for (std::int64_t v : table_.values) bound_ = std::max(bound_, v < 0 ? -v : v);
}

ModularShiftOracle::ModularShiftOracle(std::unique_ptr<SubmodularOracle> base,
                                       std::vector<std::int64_t> weights)
    : SubmodularOracle(base->n()), base_(std::move(base)), weights_(std::move(weights)) {
  if (static_cast<int>(weights_.size()) != n())
    throw Error("modular shift needs one weight per element");
  bound_ = base_->value_bound();
  for (std::int64_t w : weights_) bound_ += w < 0 ? -w : w;
}

std::int64_t ModularShiftOracle::eval(SubsetMask x) const {
  std::int64_t total = base_->evaluate(x);
  x.for_each_element([&](int v) { total += weights_[static_cast<std::size_t>(v)]; });
  return total;
}

SubmodularityCheck check_submodular(const SubmodularOracle& f) {
  const int n = f.n();
  if (n > 16) throw GroundSetTooLarge("submodularity check is exhaustive, n <= 16");
  // Cache values once; the check reads each entry many times.
  std::vector<std::int64_t> val(std::size_t{1} << n);
  for_each_subset(n, [&](SubsetMask x) { val[x.bits()] = f.evaluate(x); });
  for (std::uint64_t xb = 0; xb < (std::uint64_t{1} << n); ++xb) {
    const SubsetMask x(xb);
    for (int u = 0; u < n; ++u) {
      if (x.contains(u)) continue;
      for (int v = u + 1; v < n; ++v) {
        if (x.contains(v)) continue;
        const std::int64_t lhs = val[x.with(u).bits()] + val[x.with(v).bits()];
        const std::int64_t rhs = val[x.with(u).with(v).bits()] + val[xb];
        if (lhs < rhs) return {false, SubmodularityViolation{x, u, v}};
      }
    }
  }
  return {true, std::nullopt};
}

}  // namespace csfm
