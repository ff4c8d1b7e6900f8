#include "csfm/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "csfm/enumerate.hpp"
#include "csfm/errors.hpp"

namespace csfm {

namespace {

// Exhaustive minimal minimizer over a box, used by the brute engine and the
// stall fallback. Tracks the tie-break objective directly so the returned
// set matches what the transform route would produce.
BoxMin scan_box(const SubmodularOracle& f, SubsetMask s, SubsetMask t, int n_full) {
  if (!(s & t).empty()) throw OverlappingST("box bounds S and T must be disjoint");
  const int free_count = f.n() - (s | t).cardinality();
  if (free_count > 24) throw GroundSetTooLarge("box scan supports at most 24 free elements");
  const std::uint64_t rest = (s | t).complement_in(f.n()).bits();
  const std::int64_t scale = n_full + 1;
  SubsetMask best_set = s;
  std::int64_t best_value = f.evaluate(s);
  std::int64_t best_tagged = scale * best_value + s.cardinality();
  for (std::uint64_t sub = rest; sub != 0; sub = (sub - 1) & rest) {
    const SubsetMask x(sub | s.bits());
    const std::int64_t v = f.evaluate(x);
    const std::int64_t tagged = scale * v + x.cardinality();
    if (tagged < best_tagged) {
      best_tagged = tagged;
      best_value = v;
      best_set = x;
    }
  }
  return {best_set, best_value};
}

BoxMin box_min_with_engine(const SubmodularOracle& f, SubsetMask s, SubsetMask t, int n_full,
                           const SolveOptions& options) {
  switch (options.engine) {
    case Engine::Brute:
      return scan_box(f, s, t, n_full);
    case Engine::Wolfe:
      return min_over_box(f, s, t, n_full, options.sfm);
    case Engine::Auto:
      try {
        return min_over_box(f, s, t, n_full, options.sfm);
      } catch (const NumericalStall&) {
        if (f.n() - (s | t).cardinality() <= 24) return scan_box(f, s, t, n_full);
        throw;
      }
  }
  throw Error("unknown engine");
}

struct BestCandidate {
  bool found = false;
  std::int64_t value = 0;
  std::uint64_t rank = 0;
  SubsetMask minimizer;

  void offer(std::int64_t v, std::uint64_t r, SubsetMask m) {
    if (!found || v < value || (v == value && r < rank)) {
      found = true;
      value = v;
      rank = r;
      minimizer = m;
    }
  }
};

}  // namespace

SolveReport minimize_over_hierarchical_complement(const SubmodularOracle& f,
                                                  const ConstraintFamily& family,
                                                  const SolveOptions& options) {
  const int n = f.n();
  const int k = family.hierarchy_bound;
  if (k < 0 || k > n)
    throw InvalidBound("hierarchy bound " + std::to_string(k) + " out of range for n = " +
                       std::to_string(n));
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t calls_before = f.calls();

  SolveReport report;
  BestCandidate best;

  // The first pair is always (empty, empty): its box minimum is the
  // unconstrained one, which both seeds the early-exit threshold and, when
  // feasible, is already the answer.
  StPairStream stream(n, k);
  const StPair first = *stream.next();
  BoxMin unconstrained;
  try {
    unconstrained = box_min_with_engine(f, first.s, first.t, n, options);
  } catch (const NumericalStall&) {
    report.status = SolveStatus::NumericalStall;
    report.oracle_calls = f.calls() - calls_before;
    report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
  }
  report.candidates_examined = 1;
  const bool first_feasible = family.member(unconstrained.minimizer);
  if (first_feasible) {
    ++report.feasible_candidates;
    best.offer(unconstrained.value, first.rank, unconstrained.minimizer);
  }

  std::atomic<bool> stop{first_feasible && options.early_exit};
  std::mutex stream_mutex;
  std::atomic<std::uint64_t> examined{0};
  std::atomic<std::uint64_t> feasible_count{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  std::atomic<bool> stalled{false};

  const int workers = std::max(1, options.workers);
  std::vector<BestCandidate> worker_best(static_cast<std::size_t>(workers));

  auto run_worker = [&](int wid) {
    BestCandidate& local = worker_best[static_cast<std::size_t>(wid)];
    std::vector<StPair> batch;
    while (!stop.load(std::memory_order_relaxed)) {
      batch.clear();
      {
        std::lock_guard<std::mutex> lock(stream_mutex);
        for (int i = 0; i < 16; ++i) {
          auto p = stream.next();
          if (!p) break;
          batch.push_back(*p);
        }
      }
      if (batch.empty()) return;
      for (const StPair& pair : batch) {
        if (stop.load(std::memory_order_relaxed)) return;
        BoxMin candidate;
        try {
          candidate = box_min_with_engine(f, pair.s, pair.t, n, options);
        } catch (const NumericalStall&) {
          stalled.store(true);
          stop.store(true);
          return;
        } catch (...) {
          {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
          stop.store(true);
          return;
        }
        examined.fetch_add(1, std::memory_order_relaxed);
        if (family.member(candidate.minimizer)) {
          feasible_count.fetch_add(1, std::memory_order_relaxed);
          local.offer(candidate.value, pair.rank, candidate.minimizer);
          if (options.early_exit && candidate.value == unconstrained.value) stop.store(true);
        }
      }
    }
  };

  if (workers == 1) {
    run_worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run_worker, w);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  report.candidates_examined += examined.load();
  report.feasible_candidates += feasible_count.load();
  for (const BestCandidate& local : worker_best)
    if (local.found) best.offer(local.value, local.rank, local.minimizer);

  if (stalled.load()) {
    report.status = SolveStatus::NumericalStall;
  } else if (best.found) {
    report.status = SolveStatus::Optimal;
    report.minimizer = best.minimizer;
    report.value = best.value;
  } else {
    report.status = SolveStatus::Infeasible;
  }
  report.oracle_calls = f.calls() - calls_before;
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace {

// Shared implementation of the intersecting/crossing wrappers: solve over
// the complement of (excluded u adjoined), then patch in the adjoined sets
// that the original family did not actually exclude.
SolveReport solve_with_adjunction(const SubmodularOracle& f,
                                  const std::function<bool(SubsetMask)>& excluded,
                                  const std::vector<SubsetMask>& adjoined,
                                  const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t calls_before = f.calls();

  ConstraintFamily family;
  family.hierarchy_bound = 2;
  family.member = [&](SubsetMask x) {
    for (SubsetMask a : adjoined)
      if (x == a) return false;
    return !excluded(x);
  };
  SolveReport report = minimize_over_hierarchical_complement(f, family, options);
  if (report.status == SolveStatus::NumericalStall) return report;

  for (SubsetMask a : adjoined) {
    if (excluded(a)) continue;  // genuinely excluded, no comparison needed
    const std::int64_t v = f.evaluate(a);
    if (report.status != SolveStatus::Optimal || v < report.value) {
      report.status = SolveStatus::Optimal;
      report.value = v;
      report.minimizer = a;
    }
  }
  report.oracle_calls = f.calls() - calls_before;
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace

SolveReport minimize_over_intersecting_complement(const SubmodularOracle& f,
                                                  const ExplicitFamily& family,
                                                  const SolveOptions& options) {
  if (family.n() <= 14 && !validate_intersecting(family))
    throw StructureViolation("family declared intersecting is not");
  return minimize_over_intersecting_complement(
      f, [&family](SubsetMask x) { return family.contains(x); }, options);
}

SolveReport minimize_over_intersecting_complement(const SubmodularOracle& f,
                                                  const std::function<bool(SubsetMask)>& member,
                                                  const SolveOptions& options) {
  return solve_with_adjunction(f, member, {SubsetMask::empty_set()}, options);
}

SolveReport minimize_over_crossing_complement(const SubmodularOracle& f,
                                              const ExplicitFamily& family,
                                              const SolveOptions& options) {
  if (family.n() <= 14 && !validate_crossing(family))
    throw StructureViolation("family declared crossing is not");
  return minimize_over_crossing_complement(
      f, [&family](SubsetMask x) { return family.contains(x); }, options);
}

SolveReport minimize_over_crossing_complement(const SubmodularOracle& f,
                                              const std::function<bool(SubsetMask)>& member,
                                              const SolveOptions& options) {
  return solve_with_adjunction(f, member, {SubsetMask::empty_set(), SubsetMask::full(f.n())},
                               options);
}

KthSmallestResult kth_smallest(const SubmodularOracle& f, int k, const SolveOptions& options) {
  if (k < 1) throw Error("k must be at least 1");
  const std::uint64_t calls_before = f.calls();
  KthSmallestResult out;

  ConstraintFamily everything;
  everything.hierarchy_bound = 0;
  everything.member = [](SubsetMask) { return true; };
  SolveReport base = minimize_over_hierarchical_complement(f, everything, options);
  if (base.status == SolveStatus::NumericalStall)
    throw NumericalStall("inner solve stalled while ranking values");
  out.values.push_back(base.value);
  out.witnesses.push_back(base.minimizer);

  for (int i = 2; i <= k; ++i) {
    const std::int64_t floor_value = out.values.back();
    ConstraintFamily above;
    // Sets at the first i-1 distinct values form an (i-1)-hierarchical
    // lattice; anchors never need more than n elements either way.
    above.hierarchy_bound = std::min(i - 1, f.n());
    above.member = [&f, floor_value](SubsetMask x) { return f.evaluate(x) > floor_value; };
    SolveReport step = minimize_over_hierarchical_complement(f, above, options);
    if (step.status == SolveStatus::NumericalStall)
      throw NumericalStall("inner solve stalled while ranking values");
    if (step.status == SolveStatus::Infeasible) {
      out.oracle_calls = f.calls() - calls_before;
      throw ExhaustedValues("only " + std::to_string(i - 1) + " distinct values exist", i - 1);
    }
    out.values.push_back(step.value);
    out.witnesses.push_back(step.minimizer);
  }
  out.oracle_calls = f.calls() - calls_before;
  return out;
}

}  // namespace csfm
