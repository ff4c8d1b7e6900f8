#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "csfm/oracle.hpp"
#include "csfm/subset.hpp"

namespace csfm {

// Instance families: graph cuts, weighted coverage, explicit tables, and
// modular shifts of any base oracle. All values are integers.

struct WeightedEdge {
  int u;
  int v;
  std::int64_t w;  // must be nonnegative
};

struct WeightedGraph {
  int n = 0;
  bool directed = false;
  std::vector<WeightedEdge> edges;
};

// Validates endpoint ranges, u != v, and w >= 0.
void validate_graph(const WeightedGraph& g);

// Directed: total weight of edges leaving X. Undirected: total weight of
// edges with exactly one endpoint in X.
std::int64_t cut_value(const WeightedGraph& g, SubsetMask x);

struct CoverageSystem {
  std::vector<std::int64_t> universe_weights;  // nonnegative
  std::vector<std::vector<int>> incidence;     // per ground element, covered items
};

void validate_coverage(const CoverageSystem& c);

// Total universe weight covered by the union of incidences over X.
std::int64_t coverage_value(const CoverageSystem& c, SubsetMask x);

struct TableFunction {
  int n = 0;
  std::vector<std::int64_t> values;  // 2^n entries indexed by mask
};

void validate_table(const TableFunction& t);

std::int64_t table_value(const TableFunction& t, SubsetMask x);

class CutOracle final : public SubmodularOracle {
 public:
  explicit CutOracle(WeightedGraph g);
  std::int64_t value_bound() const override { return bound_; }
  const WeightedGraph& graph() const { return graph_; }

 protected:
  std::int64_t eval(SubsetMask x) const override { return cut_value(graph_, x); }

 private:
  WeightedGraph graph_;
  std::int64_t bound_;
};

class CoverageOracle final : public SubmodularOracle {
 public:
  explicit CoverageOracle(CoverageSystem c, int n);
  std::int64_t value_bound() const override { return bound_; }
  const CoverageSystem& system() const { return system_; }

 protected:
  std::int64_t eval(SubsetMask x) const override { return coverage_value(system_, x); }

 private:
  CoverageSystem system_;
  std::int64_t bound_;
};

class TableOracle final : public SubmodularOracle {
 public:
  explicit TableOracle(TableFunction t);
  std::int64_t value_bound() const override { return bound_; }
  const TableFunction& table() const { return table_; }

 protected:
  std::int64_t eval(SubsetMask x) const override { return table_value(table_, x); }

 private:
  TableFunction table_;
  std::int64_t bound_;
};

// f(X) = base(X) + sum of weights over X. Owns the base oracle.
class ModularShiftOracle final : public SubmodularOracle {
 public:
  ModularShiftOracle(std::unique_ptr<SubmodularOracle> base, std::vector<std::int64_t> weights);
  std::int64_t value_bound() const override { return bound_; }
  const SubmodularOracle& base() const { return *base_; }
  const std::vector<std::int64_t>& weights() const { return weights_; }

 protected:
  std::int64_t eval(SubsetMask x) const override;

 private:
  std::unique_ptr<SubmodularOracle> base_;
  std::vector<std::int64_t> weights_;
  std::int64_t bound_;
};

struct SubmodularityViolation {
  SubsetMask x;
  int u;
  int v;
};

struct SubmodularityCheck {
  bool ok = false;
  std::optional<SubmodularityViolation> witness;
};

// Exhaustive local check: f(X+u) + f(X+v) >= f(X+u+v) + f(X) for every X and
// distinct u,v outside X, which is equivalent to the pairwise inequality
// f(X)+f(Y) >= f(X|Y)+f(X&Y). Scans X ascending, then u < v, and reports the
// first violation. Throws GroundSetTooLarge for n > 16.
SubmodularityCheck check_submodular(const SubmodularOracle& f);

}  // namespace csfm
