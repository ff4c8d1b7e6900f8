#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "csfm/oracle.hpp"
#include "csfm/subset.hpp"

namespace csfm {

// Inner SFM engine: greedy vertices of the base polytope, the minimum-norm-
// point method with an exact integer optimality certificate, box restriction
// by contraction, and the cardinality tie-break transform.

// A vertex of the base polytope: coordinates[order[i]] is the marginal
// f(first i+1 elements) - f(first i elements) along the generating order.
// Prefix sums therefore reproduce f(prefix) - f(empty) exactly.
struct BaseVertex {
  std::vector<double> coordinates;
  std::vector<int> generating_order;
};

BaseVertex greedy_vertex(const SubmodularOracle& f, std::span<const int> order);

struct SfmOptions {
  // Major-cycle cap; 0 means the default 10*n^3.
  std::uint64_t max_major_cycles = 0;
  // Relative pivot floor when solving the active-set normal equations.
  double degeneracy_tol = 1e-10;
  // Convex coefficients at or below this are treated as zero and dropped.
  double coeff_drop_tol = 1e-12;
  // Collect the per-cycle duality lower bounds into SfmResult.
  bool record_lower_bounds = false;
};

struct SfmResult {
  SubsetMask minimizer;
  std::int64_t value = 0;
  double certificate_gap = 0.0;  // f(minimizer) - duality lower bound, < 1 at return
  std::uint64_t oracle_calls = 0;
  std::uint64_t major_cycles = 0;
  std::vector<double> lower_bound_trace;  // filled when record_lower_bounds
};

// Exact global minimization of an integer submodular function. Runs Wolfe
// major/minor cycles over the base polytope, harvesting candidate level sets
// from every greedy sweep, and stops as soon as
//   f(best) - sum_v min(x_v, 0) < 1,
// which pins the minimum because f is integral. Floating point can only
// delay that moment, never fake it: the bound is widened by a rounding
// margin before the comparison. Throws NumericalStall when the cycle cap is
// reached (or the iteration provably cannot move) without a certificate.
SfmResult min_norm_sfm(const SubmodularOracle& f, const SfmOptions& options = {});

// f restricted to the box S <= X <= V\T, contracted onto ground set
// V \ (S u T): eval(X) = f(X u S). Minimizing the contraction is equivalent
// to minimizing f over the box, and submodularity is preserved.
class ContractedOracle final : public SubmodularOracle {
 public:
  ContractedOracle(const SubmodularOracle& f, SubsetMask s, SubsetMask t);

  std::int64_t value_bound() const override { return base_->value_bound(); }
  SubsetMask expand(SubsetMask x) const;  // contracted mask -> original mask, S included

 protected:
  std::int64_t eval(SubsetMask x) const override { return base_->evaluate(expand(x)); }

 private:
  const SubmodularOracle* base_;
  SubsetMask forced_;
  std::vector<int> positions_;  // contracted index -> original index
};

ContractedOracle restrict_contract(const SubmodularOracle& f, SubsetMask s, SubsetMask t);

// g(X) = (n_full + 1) * f(X) + |X|. Submodular alongside f, and its minimizer
// is unique: the containment-minimal minimizer of f. n_full is the size of
// the original ground set even when f is already a contraction; the constant
// |S| offset this drops is harmless. Refuses to build when
// (n_full+1)*bound + n_full reaches 2^62.
class TieBreakOracle final : public SubmodularOracle {
 public:
  TieBreakOracle(const SubmodularOracle& f, int n_full);
  TieBreakOracle(const SubmodularOracle& f, int n_full, std::int64_t declared_bound);

  std::int64_t value_bound() const override { return bound_; }

 protected:
  std::int64_t eval(SubsetMask x) const override {
    return static_cast<std::int64_t>(n_full_ + 1) * base_->evaluate(x) + x.cardinality();
  }

 private:
  const SubmodularOracle* base_;
  int n_full_;
  std::int64_t bound_;
};

TieBreakOracle tie_break(const SubmodularOracle& f, int n_full);

struct BoxMin {
  SubsetMask minimizer;  // over the original ground set
  std::int64_t value = 0;
};

// The unique containment-minimal minimizer of f over {X : S <= X <= V\T},
// via contraction plus the tie-break transform. Throws OverlappingST when
// S and T intersect; propagates NumericalStall and OverflowRisk.
BoxMin min_over_box(const SubmodularOracle& f, SubsetMask s, SubsetMask t, int n_full,
                    const SfmOptions& options = {});

}  // namespace csfm
