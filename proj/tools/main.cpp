// Command-line front end: solve / verify / gen / kth / bench over JSON
// instance files. Exit codes: 0 optimal or all checks passed, 1 solver vs
// brute mismatch, 2 infeasible or exhausted values, 3 parse or cap error,
// 4 structural violation, 5 numerical stall.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "csfm/brute.hpp"
#include "csfm/enumerate.hpp"
#include "csfm/errors.hpp"
#include "csfm/families.hpp"
#include "csfm/generator.hpp"
#include "csfm/instance.hpp"
#include "csfm/solver.hpp"

using namespace csfm;
using nlohmann::json;

namespace {

constexpr int kExitOptimal = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitParse = 3;
constexpr int kExitStructure = 4;
constexpr int kExitStall = 5;

Engine engine_from(const std::string& name) {
  if (name == "auto") return Engine::Auto;
  if (name == "wolfe") return Engine::Wolfe;
  if (name == "brute") return Engine::Brute;
  throw ParseError("unknown engine \"" + name + "\"");
}

void write_output(const json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write " + out_path);
    out << doc.dump(2) << "\n";
  }
}

SolveReport dispatch_solve(const Instance& instance, const SolveOptions& options) {
  switch (instance.kind) {
    case ConstraintKind::ComplementOfIntersecting:
      return minimize_over_intersecting_complement(*instance.oracle, *instance.excluded_list,
                                                   options);
    case ConstraintKind::ComplementOfCrossing:
      return minimize_over_crossing_complement(*instance.oracle, *instance.excluded_list, options);
    default:
      return minimize_over_hierarchical_complement(*instance.oracle, instance.family, options);
  }
}

int status_exit(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return kExitOptimal;
    case SolveStatus::Infeasible: return kExitInfeasible;
    case SolveStatus::NumericalStall: return kExitStall;
  }
  return kExitParse;
}

int cmd_solve(const std::string& instance_path, const SolveOptions& options,
              const std::string& out_path) {
  const Instance instance = parse_instance_file(instance_path);
  const SolveReport report = dispatch_solve(instance, options);
  write_output(report_to_json(report, instance), out_path);
  return status_exit(report.status);
}

// Membership and bound actually promised to the witness structure. For the
// intersecting/crossing kinds that is the family with the boundary sets
// adjoined, not the raw instance family.
struct PromisedFamily {
  MemberFn member;
  int bound;
};

PromisedFamily promised_family(const Instance& instance) {
  switch (instance.kind) {
    case ConstraintKind::ComplementOfIntersecting: {
      const ExplicitFamily& g = *instance.excluded_list;
      return {[&g](SubsetMask x) { return !x.empty() && !g.contains(x); }, 2};
    }
    case ConstraintKind::ComplementOfCrossing: {
      const ExplicitFamily& g = *instance.excluded_list;
      const SubsetMask full = SubsetMask::full(g.n());
      return {[&g, full](SubsetMask x) { return !x.empty() && x != full && !g.contains(x); }, 2};
    }
    default:
      return {instance.family.member, instance.family.hierarchy_bound};
  }
}

int cmd_verify(const Instance& instance, const std::string& out_path) {
  const int n = instance.ground.size();
  if (n > 14) throw GroundSetTooLarge("verify mode is exhaustive, n <= 14");

  json checks;
  bool structural_ok = true;

  switch (instance.kind) {
    case ConstraintKind::None:
      break;
    case ConstraintKind::ComplementOfRings: {
      bool lattices_ok = true;
      for (const RingFamily& ring : instance.rings)
        lattices_ok = lattices_ok && validate_lattice(expand_ring(ring));
      checks["rings_are_lattices"] = lattices_ok;
      const bool hierarchy_ok = validate_k_hierarchical(union_witness_partition(instance.rings));
      checks["union_is_k_hierarchical"] = hierarchy_ok;
      structural_ok = lattices_ok && hierarchy_ok;
      break;
    }
    case ConstraintKind::ComplementOfIntersecting: {
      structural_ok = validate_intersecting(*instance.excluded_list);
      checks["family_is_intersecting"] = structural_ok;
      break;
    }
    case ConstraintKind::ComplementOfCrossing: {
      structural_ok = validate_crossing(*instance.excluded_list);
      checks["family_is_crossing"] = structural_ok;
      break;
    }
    case ConstraintKind::Explicit: {
      if (!instance.witness_partition.empty()) {
        const bool hierarchy_ok = validate_k_hierarchical(instance.witness_partition);
        checks["witness_partition_is_k_hierarchical"] = hierarchy_ok;
        std::size_t covered = 0;
        bool all_excluded = true;
        for (const ExplicitFamily& part : instance.witness_partition) {
          covered += part.size();
          for (SubsetMask m : part.members())
            all_excluded = all_excluded && instance.excluded_list->contains(m);
        }
        const bool covers = covered == instance.excluded_list->size() && all_excluded;
        checks["witness_partition_covers_excluded"] = covers;
        structural_ok = hierarchy_ok && covers;
      } else {
        checks["witness_partition"] = "absent; hierarchy bound trusted";
      }
      break;
    }
  }

  if (!structural_ok) {
    checks["result"] = "structural violation";
    write_output(checks, out_path);
    return kExitStructure;
  }

  // Solver versus exhaustive scan on the real feasible region.
  const SolveReport report = dispatch_solve(instance, SolveOptions{});
  if (report.status == SolveStatus::NumericalStall) return kExitStall;
  const BruteReport expected = brute_min(*instance.oracle, instance.family.member);
  bool match;
  if (expected.feasible) {
    match = report.status == SolveStatus::Optimal && report.value == expected.min_value &&
            instance.family.member(report.minimizer) &&
            instance.oracle->evaluate(report.minimizer) == report.value;
  } else {
    match = report.status == SolveStatus::Infeasible;
  }
  checks["solver_matches_brute"] = match;
  checks["brute_feasible"] = expected.feasible;
  if (expected.feasible) checks["optimal_value"] = expected.min_value;

  bool witnesses_ok = true;
  if (n <= 10) {
    const PromisedFamily promise = promised_family(instance);
    const StructureCheck t1 = brute_check_box_witness(*instance.oracle, promise.member, promise.bound);
    const StructureCheck t2 = brute_check_minimal_witness(*instance.oracle, promise.member, promise.bound);
    const bool anchors = brute_check_interval_anchors(promise.member, n, promise.bound);
    checks["minimizers_box_witnessed"] = t1.ok;
    checks["minimal_uniquely_witnessed"] = t2.ok;
    checks["interval_anchors"] = anchors;
    json witnesses = json::array();
    for (const auto& w : t1.witnesses) {
      json row;
      row["minimizer"] = mask_to_json(w.minimizer);
      row["s"] = mask_to_json(w.s);
      row["t"] = mask_to_json(w.t);
      witnesses.push_back(row);
    }
    checks["witness_map"] = witnesses;
    witnesses_ok = t1.ok && t2.ok && anchors;
  } else {
    checks["witness_checks"] = "skipped; exhaustive only for n <= 10";
  }

  checks["result"] =
      (match && witnesses_ok) ? "pass" : (witnesses_ok ? "mismatch" : "structural violation");
  write_output(checks, out_path);
  if (!witnesses_ok) return kExitStructure;
  return match ? kExitOptimal : kExitMismatch;
}

int cmd_kth(const Instance& instance, int k, const SolveOptions& options,
            const std::string& out_path) {
  const KthSmallestResult result = kth_smallest(*instance.oracle, k, options);
  write_output(kth_report_to_json(result, instance), out_path);
  return kExitOptimal;
}

int cmd_bench(const std::string& kind, int n_min, int n_max, int k_min, int k_max, int seeds,
              const SolveOptions& options, const std::string& csv_path) {
  std::ostringstream csv;
  csv << "n,k,candidates,oracle_calls,wall_ms,status\n";
  for (int n = n_min; n <= n_max; ++n)
    for (int k = k_min; k <= std::min(k_max, n); ++k)
      for (int seed = 0; seed < seeds; ++seed) {
        GenParams params;
        params.kind = kind;
        params.n = n;
        params.k = k;
        params.seed = static_cast<std::uint64_t>(seed);
        const Instance instance = parse_instance(generate_instance(params));
        const SolveReport report = dispatch_solve(instance, options);
        csv << n << "," << k << "," << report.candidates_examined << "," << report.oracle_calls
            << "," << report.wall_ms << "," << status_name(report.status) << "\n";
      }
  if (csv_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(csv_path);
    if (!out) throw Error("cannot write " + csv_path);
    out << csv.str();
  }
  return kExitOptimal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Integer submodular minimization over complements of hierarchically structured set "
      "families"};
  app.require_subcommand(1);

  std::string instance_path, out_path, csv_path, engine_name = "auto", kind;
  int parallel = 1, k = 1;
  bool early_exit = false;
  int n_min = 6, n_max = 12, k_min = 1, k_max = 1, seeds = 3;
  std::uint64_t seed = 0;
  int gen_n = 8, gen_k = 2;
  std::int64_t weight_max = 10;

  auto add_solver_flags = [&](CLI::App* cmd) {
    cmd->add_option("--engine", engine_name, "auto|wolfe|brute");
    cmd->add_option("--parallel", parallel, "worker count for the (S,T) scan");
    cmd->add_flag("--early-exit", early_exit,
                  "stop once a feasible candidate matches the unconstrained minimum");
  };

  CLI::App* solve = app.add_subcommand("solve", "minimize over the instance's constraint family");
  solve->add_option("--instance", instance_path, "instance JSON path")->required();
  solve->add_option("--out", out_path, "write the report JSON here instead of stdout");
  add_solver_flags(solve);

  CLI::App* verify =
      app.add_subcommand("verify", "validate structure and cross-check against brute force");
  verify->add_option("--instance", instance_path, "instance JSON path")->required();
  verify->add_option("--out", out_path, "write the check report JSON here instead of stdout");

  CLI::App* gen = app.add_subcommand("gen", "emit a seeded random instance");
  gen->add_option("--kind", kind,
                  "cut+rings|coverage+rings|table+intersecting|table+crossing|cut+explicit")
      ->required();
  gen->add_option("--n", gen_n, "ground set size")->required();
  gen->add_option("--k", gen_k, "hierarchy bound (0 = unconstrained)")->required();
  gen->add_option("--seed", seed, "generator seed")->required();
  gen->add_option("--weight-max", weight_max, "weight magnitude cap");
  gen->add_option("--out", out_path, "instance file to write");

  CLI::App* kth =
      app.add_subcommand("kth", "k-th smallest distinct value of the instance's function");
  kth->add_option("--instance", instance_path, "instance JSON path")->required();
  kth->add_option("--k", k, "how many distinct values")->required();
  kth->add_option("--out", out_path, "write the report JSON here instead of stdout");
  add_solver_flags(kth);

  CLI::App* bench = app.add_subcommand("bench", "sweep generated instances, one CSV row per run");
  bench->add_option("--kind", kind, "generator kind")->required();
  bench->add_option("--n-min", n_min, "smallest ground set");
  bench->add_option("--n-max", n_max, "largest ground set");
  bench->add_option("--k-min", k_min, "smallest hierarchy bound");
  bench->add_option("--k-max", k_max, "largest hierarchy bound");
  bench->add_option("--seeds", seeds, "seeds per configuration");
  bench->add_option("--csv", csv_path, "CSV output path (stdout when absent)");
  add_solver_flags(bench);

  CLI11_PARSE(app, argc, argv);

  try {
    SolveOptions options;
    options.engine = engine_from(engine_name);
    options.workers = parallel;
    options.early_exit = early_exit;

    if (solve->parsed()) return cmd_solve(instance_path, options, out_path);
    if (verify->parsed()) return cmd_verify(parse_instance_file(instance_path), out_path);
    if (gen->parsed()) {
      GenParams params{kind, gen_n, gen_k, seed, weight_max};
      write_output(generate_instance(params), out_path);
      return kExitOptimal;
    }
    if (kth->parsed()) return cmd_kth(parse_instance_file(instance_path), k, options, out_path);
    if (bench->parsed())
      return cmd_bench(kind, n_min, n_max, k_min, k_max, seeds, options, csv_path);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const GroundSetTooLarge& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitParse;
  } catch (const InvalidBound& e) {
    std::cerr << "invalid bound: " << e.what() << "\n";
    return kExitParse;
  } catch (const OverflowRisk& e) {
    std::cerr << "overflow risk: " << e.what() << "\n";
    return kExitParse;
  } catch (const ExhaustedValues& e) {
    std::cerr << "exhausted: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const StructureViolation& e) {
    std::cerr << "structure violation: " << e.what() << "\n";
    return kExitStructure;
  } catch (const OverlappingParts& e) {
    std::cerr << "structure violation: " << e.what() << "\n";
    return kExitStructure;
  } catch (const NumericalStall& e) {
    std::cerr << "numerical stall: " << e.what() << "\n";
    return kExitStall;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}
