#include "csfm/sfm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "csfm/errors.hpp"

namespace csfm {

namespace {

// One greedy sweep: fills integer marginals along `order`, converts them to
// the vertex coordinates, and reports the best prefix value seen. Prefixes
// of a sweep ordered by ascending x are exactly the level sets of x, so this
// is also where candidate minimizers are harvested. Values are normalized by
// f(empty) so that prefix sums telescope exactly.
struct SweepResult {
  std::vector<double> coords;
  std::int64_t best_prefix_value;  // normalized, min over prefixes incl. empty
  SubsetMask best_prefix;
  std::int64_t max_abs_coord;
};

SweepResult greedy_sweep(const SubmodularOracle& f, std::int64_t f_empty,
                         std::span<const int> order) {
  const int n = f.n();
  SweepResult out;
  out.coords.assign(static_cast<std::size_t>(n), 0.0);
  out.best_prefix_value = 0;
  out.best_prefix = SubsetMask::empty_set();
  out.max_abs_coord = 0;
  SubsetMask prefix = SubsetMask::empty_set();
  std::int64_t prev = f_empty;
  for (int i = 0; i < n; ++i) {
    const int v = order[static_cast<std::size_t>(i)];
    prefix = prefix.with(v);
    const std::int64_t cur = f.evaluate(prefix);
    const std::int64_t marginal = cur - prev;
    out.coords[static_cast<std::size_t>(v)] = static_cast<double>(marginal);
    out.max_abs_coord = std::max(out.max_abs_coord, marginal < 0 ? -marginal : marginal);
    if (cur - f_empty < out.best_prefix_value) {
      out.best_prefix_value = cur - f_empty;
      out.best_prefix = prefix;
    }
    prev = cur;
  }
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Minimize ||sum alpha_i q_i||^2 subject to sum alpha_i = 1 by Cholesky on
// the Gram matrix plus the all-ones rank-one term. A failed pivot means the
// active vertices are affinely dependent; `dependent` then names a vertex
// whose removal restores independence.
struct AffineSolve {
  std::vector<double> alpha;
  int dependent = -1;
};

AffineSolve solve_affine(const std::vector<std::vector<double>>& verts, double deg_tol) {
  const int m = static_cast<int>(verts.size());
  std::vector<double> a(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
  std::vector<double> diag(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      const double g = dot(verts[static_cast<std::size_t>(i)], verts[static_cast<std::size_t>(j)]) + 1.0;
      a[static_cast<std::size_t>(i * m + j)] = g;
      a[static_cast<std::size_t>(j * m + i)] = g;
      if (i == j) diag[static_cast<std::size_t>(i)] = g;
    }

  // In-place lower Cholesky with a relative pivot floor.
  for (int j = 0; j < m; ++j) {
    double d = a[static_cast<std::size_t>(j * m + j)];
    for (int k = 0; k < j; ++k) d -= a[static_cast<std::size_t>(j * m + k)] * a[static_cast<std::size_t>(j * m + k)];
    if (d <= deg_tol * diag[static_cast<std::size_t>(j)]) return {{}, j};
    const double root = std::sqrt(d);
    a[static_cast<std::size_t>(j * m + j)] = root;
    for (int i = j + 1; i < m; ++i) {
      double s = a[static_cast<std::size_t>(i * m + j)];
      for (int k = 0; k < j; ++k) s -= a[static_cast<std::size_t>(i * m + k)] * a[static_cast<std::size_t>(j * m + k)];
      a[static_cast<std::size_t>(i * m + j)] = s / root;
    }
  }

  // Solve (G + ee^T) beta = e, then alpha = beta / (e^T beta).
  std::vector<double> beta(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    double s = 1.0;
    for (int k = 0; k < i; ++k) s -= a[static_cast<std::size_t>(i * m + k)] * beta[static_cast<std::size_t>(k)];
    beta[static_cast<std::size_t>(i)] = s / a[static_cast<std::size_t>(i * m + i)];
  }
  for (int i = m - 1; i >= 0; --i) {
    double s = beta[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < m; ++k) s -= a[static_cast<std::size_t>(k * m + i)] * beta[static_cast<std::size_t>(k)];
    beta[static_cast<std::size_t>(i)] = s / a[static_cast<std::size_t>(i * m + i)];
  }
  const double total = std::accumulate(beta.begin(), beta.end(), 0.0);
  AffineSolve out;
  out.alpha.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) out.alpha[static_cast<std::size_t>(i)] = beta[static_cast<std::size_t>(i)] / total;
  return out;
}

}  // namespace

BaseVertex greedy_vertex(const SubmodularOracle& f, std::span<const int> order) {
  const int n = f.n();
  if (static_cast<int>(order.size()) != n)
    throw Error("generating order must be a permutation of the ground set");
  SubsetMask seen = SubsetMask::empty_set();
  for (int v : order) {
    if (v < 0 || v >= n || seen.contains(v))
      throw Error("generating order must be a permutation of the ground set");
    seen = seen.with(v);
  }
  const std::int64_t f_empty = f.evaluate(SubsetMask::empty_set());
  SweepResult sweep = greedy_sweep(f, f_empty, order);
  BaseVertex out;
  out.coordinates = std::move(sweep.coords);
  out.generating_order.assign(order.begin(), order.end());
  return out;
}

SfmResult min_norm_sfm(const SubmodularOracle& f, const SfmOptions& options) {
  const int n = f.n();
  if (n < 1) throw Error("minimization needs a nonempty ground set");
  const std::uint64_t calls_before = f.calls();
  const std::uint64_t cap = options.max_major_cycles
                                ? options.max_major_cycles
                                : 10ull * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n) *
                                      static_cast<std::uint64_t>(n);

  const std::int64_t f_empty = f.evaluate(SubsetMask::empty_set());

  SfmResult result;
  result.minimizer = SubsetMask::empty_set();
  std::int64_t best = 0;  // best normalized value, empty set included
  SubsetMask best_set = SubsetMask::empty_set();
  std::int64_t max_abs_coord = 1;

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  auto sweep_and_track = [&](const std::vector<int>& ord) {
    SweepResult s = greedy_sweep(f, f_empty, ord);
    if (s.best_prefix_value < best) {
      best = s.best_prefix_value;
      best_set = s.best_prefix;
    }
    max_abs_coord = std::max(max_abs_coord, s.max_abs_coord);
    return std::move(s.coords);
  };

  std::vector<std::vector<double>> active;
  std::vector<double> lambda;
  active.push_back(sweep_and_track(order));
  lambda.push_back(1.0);
  std::vector<double> x = active.front();

  auto recombine = [&]() {
    std::fill(x.begin(), x.end(), 0.0);
    for (std::size_t i = 0; i < active.size(); ++i)
      for (int v = 0; v < n; ++v)
        x[static_cast<std::size_t>(v)] += lambda[i] * active[i][static_cast<std::size_t>(v)];
  };

  auto drop_vertex = [&](std::size_t idx) {
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(idx));
    lambda.erase(lambda.begin() + static_cast<std::ptrdiff_t>(idx));
    const double total = std::accumulate(lambda.begin(), lambda.end(), 0.0);
    for (double& l : lambda) l /= total;
  };

  result.major_cycles = 1;  // the initial sweep
  int stagnant = 0;
  double prev_norm = std::numeric_limits<double>::infinity();

  // The duality certificate on the current base-polytope point, widened by a
  // rounding margin so floating error can only delay termination. Returns
  // the raw gap when it proves optimality.
  auto certified = [&](double lower) -> std::optional<double> {
    const double margin = 1e-13 * static_cast<double>(n + 1) * static_cast<double>(n + 1) *
                          std::max<double>(1.0, static_cast<double>(max_abs_coord));
    const double gap = static_cast<double>(best) - lower;
    if (gap + margin < 1.0) return gap;
    return std::nullopt;
  };
  auto finish = [&](double gap) {
    result.minimizer = best_set;
    result.value = best + f_empty;
    result.certificate_gap = gap;
    result.oracle_calls = f.calls() - calls_before;
    return result;
  };

  while (true) {
    double lower = 0.0;
    for (double v : x) lower += std::min(v, 0.0);
    if (options.record_lower_bounds)
      result.lower_bound_trace.push_back(lower + static_cast<double>(f_empty));
    if (auto gap = certified(lower)) return finish(*gap);

    if (result.major_cycles >= cap)
      throw NumericalStall("cycle cap reached with certificate gap " +
                           std::to_string(static_cast<double>(best) - lower));

    // Next greedy vertex along ascending x; its prefixes are the level sets.
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const double xa = x[static_cast<std::size_t>(a)];
      const double xb = x[static_cast<std::size_t>(b)];
      return xa < xb || (xa == xb && a < b);
    });
    std::vector<double> q = sweep_and_track(order);
    ++result.major_cycles;

    // The sweep may have harvested a better level set for the same point;
    // retest before concluding anything about convergence.
    if (auto gap = certified(lower)) return finish(*gap);

    const double xx = dot(x, x);
    const double xq = dot(x, q);
    if (xq >= xx - 1e-10 * (1.0 + xx)) {
      // Numerically at the minimum-norm point but the integer certificate
      // still failed: the instance outruns double precision.
      throw NumericalStall("minimum-norm point reached without integer certificate");
    }
    if (xx >= prev_norm - 1e-14 * (1.0 + prev_norm)) {
      if (++stagnant > 64)
        throw NumericalStall("no progress over 64 consecutive cycles");
    } else {
      stagnant = 0;
    }
    prev_norm = xx;

    active.push_back(std::move(q));
    lambda.push_back(0.0);

    // Minor cycles: pull the point to the affine minimizer of the active
    // set, shedding vertices whose coefficient hits zero.
    while (true) {
      AffineSolve sol = solve_affine(active, options.degeneracy_tol);
      if (sol.dependent >= 0) {
        drop_vertex(static_cast<std::size_t>(sol.dependent));
        continue;
      }
      double min_alpha = sol.alpha.empty() ? 0.0 : *std::min_element(sol.alpha.begin(), sol.alpha.end());
      if (min_alpha >= -options.coeff_drop_tol) {
        lambda = std::move(sol.alpha);
        for (double& l : lambda) l = std::max(l, 0.0);
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < lambda.size(); ++i)
        if (sol.alpha[i] < 0.0) theta = std::min(theta, lambda[i] / (lambda[i] - sol.alpha[i]));
      for (std::size_t i = 0; i < lambda.size(); ++i)
        lambda[i] = (1.0 - theta) * lambda[i] + theta * sol.alpha[i];
      for (std::size_t i = lambda.size(); i-- > 0;)
        if (lambda[i] <= options.coeff_drop_tol) drop_vertex(i);
    }

    // Tidy the corral and refresh the point from scratch.
    for (std::size_t i = lambda.size(); i-- > 0;)
      if (lambda[i] <= options.coeff_drop_tol) drop_vertex(i);
    recombine();
  }
}

namespace {

int contracted_size(const SubmodularOracle& f, SubsetMask s, SubsetMask t) {
  if (!(s & t).empty()) throw OverlappingST("box bounds S and T must be disjoint");
  const SubsetMask full = SubsetMask::full(f.n());
  if (!s.is_subset_of(full) || !t.is_subset_of(full))
    throw Error("box bounds outside the ground set");
  return f.n() - (s | t).cardinality();
}

}  // namespace

ContractedOracle::ContractedOracle(const SubmodularOracle& f, SubsetMask s, SubsetMask t)
    : SubmodularOracle(contracted_size(f, s, t)), base_(&f), forced_(s) {
  positions_ = (s | t).complement_in(f.n()).elements();
}

SubsetMask ContractedOracle::expand(SubsetMask x) const {
  SubsetMask out = forced_;
  x.for_each_element([&](int i) { out = out.with(positions_[static_cast<std::size_t>(i)]); });
  return out;
}

ContractedOracle restrict_contract(const SubmodularOracle& f, SubsetMask s, SubsetMask t) {
  return ContractedOracle(f, s, t);
}

namespace {

std::int64_t checked_tie_break_bound(int n_full, std::int64_t declared) {
  if (declared < 0) throw Error("value bound must be nonnegative");
  const auto wide = static_cast<__int128>(n_full + 1) * declared + n_full;
  if (wide >= (static_cast<__int128>(1) << 62))
    throw OverflowRisk("(n+1)*bound + n reaches 2^62; refusing the tie-break transform");
  return static_cast<std::int64_t>(wide);
}

}  // namespace

TieBreakOracle::TieBreakOracle(const SubmodularOracle& f, int n_full)
    : TieBreakOracle(f, n_full, f.value_bound()) {}

TieBreakOracle::TieBreakOracle(const SubmodularOracle& f, int n_full, std::int64_t declared_bound)
    : SubmodularOracle(f.n()), base_(&f), n_full_(n_full),
      bound_(checked_tie_break_bound(n_full, declared_bound)) {
  if (n_full < f.n()) throw Error("n_full cannot be smaller than the oracle's ground set");
}

TieBreakOracle tie_break(const SubmodularOracle& f, int n_full) {
  return TieBreakOracle(f, n_full);
}

BoxMin min_over_box(const SubmodularOracle& f, SubsetMask s, SubsetMask t, int n_full,
                    const SfmOptions& options) {
  const ContractedOracle contracted = restrict_contract(f, s, t);
  if (contracted.n() == 0) return {s, f.evaluate(s)};
  const TieBreakOracle g(contracted, n_full);
  const SfmResult r = min_norm_sfm(g, options);
  const SubsetMask minimizer = contracted.expand(r.minimizer);
  const std::int64_t card = r.minimizer.cardinality();
  const std::int64_t value = (r.value - card) / (n_full + 1);
  if (value * (n_full + 1) + card != r.value)
    throw Error("tie-break value failed to factor; oracle is not integer-consistent");
  return {minimizer, value};
}

}  // namespace csfm
