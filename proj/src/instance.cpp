#include "csfm/instance.hpp"

#include <cstdio>
#include <fstream>

#include "csfm/errors.hpp"
#include "csfm/functions.hpp"

namespace csfm {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

const json& need(const json& doc, const char* key, const std::string& where) {
  auto it = doc.find(key);
  if (it == doc.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::int64_t need_int(const json& doc, const char* key, const std::string& where) {
  const json& v = need(doc, key, where);
  if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
  return v.get<std::int64_t>();
}

GroundSet parse_ground(const json& doc) {
  if (doc.contains("ground_set")) {
    const json& labels = doc["ground_set"];
    if (!labels.is_array() || labels.empty()) fail("ground_set", "expected a nonempty array");
    std::vector<std::string> out;
    for (const json& l : labels) {
      if (!l.is_string()) fail("ground_set", "labels must be strings");
      out.push_back(l.get<std::string>());
    }
    return GroundSet(std::move(out));
  }
  const std::int64_t n = need_int(doc, "n", "instance");
  if (n < 1 || n > kMaxGroundSetSize) fail("n", "ground set size must be in [1,64]");
  return GroundSet(static_cast<int>(n));
}

std::unique_ptr<SubmodularOracle> parse_function(const json& doc, int n, const std::string& where) {
  const std::string kind = need(doc, "kind", where).get<std::string>();
  if (kind == "cut") {
    WeightedGraph g;
    g.n = n;
    g.directed = doc.value("directed", false);
    const json& edges = need(doc, "edges", where);
    if (!edges.is_array()) fail(where + ".edges", "expected an array");
    for (const json& e : edges) {
      if (!e.is_array() || e.size() != 3) fail(where + ".edges", "edges are [u, v, w] triples");
      g.edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<std::int64_t>()});
    }
    try {
      return std::make_unique<CutOracle>(std::move(g));
    } catch (const Error& err) {
      fail(where + ".edges", err.what());
    }
  }
  if (kind == "coverage") {
    CoverageSystem c;
    for (const json& w : need(doc, "universe_weights", where))
      c.universe_weights.push_back(w.get<std::int64_t>());
    const json& incidence = need(doc, "incidence", where);
    if (static_cast<int>(incidence.size()) != n)
      fail(where + ".incidence", "expected one entry per ground element");
    for (const json& items : incidence) {
      std::vector<int> row;
      for (const json& item : items) row.push_back(item.get<int>());
      c.incidence.push_back(std::move(row));
    }
    try {
      return std::make_unique<CoverageOracle>(std::move(c), n);
    } catch (const Error& err) {
      fail(where, err.what());
    }
  }
  if (kind == "table") {
    TableFunction t;
    t.n = n;
    for (const json& v : need(doc, "values", where)) t.values.push_back(v.get<std::int64_t>());
    try {
      return std::make_unique<TableOracle>(std::move(t));
    } catch (const Error& err) {
      fail(where + ".values", err.what());
    }
  }
  if (kind == "modular_shift") {
    auto base = parse_function(need(doc, "base", where), n, where + ".base");
    std::vector<std::int64_t> weights;
    for (const json& w : need(doc, "weights", where)) weights.push_back(w.get<std::int64_t>());
    try {
      return std::make_unique<ModularShiftOracle>(std::move(base), std::move(weights));
    } catch (const Error& err) {
      fail(where + ".weights", err.what());
    }
  }
  fail(where + ".kind", "unknown function kind \"" + kind + "\"");
}

RingFamily parse_ring(const json& doc, int n, const std::string& where) {
  const SubsetMask forced = mask_from_json(need(doc, "forced_in", where), n, where + ".forced_in");
  const SubsetMask allowed = mask_from_json(need(doc, "allowed", where), n, where + ".allowed");
  std::vector<std::pair<int, int>> implications;
  if (doc.contains("implications"))
    for (const json& arc : doc["implications"]) {
      if (!arc.is_array() || arc.size() != 2) fail(where + ".implications", "arcs are [u, v] pairs");
      implications.emplace_back(arc[0].get<int>(), arc[1].get<int>());
    }
  try {
    return RingFamily(n, forced, allowed, std::move(implications));
  } catch (const Error& err) {
    fail(where, err.what());
  }
}

ExplicitFamily parse_family(const json& arr, int n, const std::string& where) {
  std::vector<SubsetMask> members;
  if (!arr.is_array()) fail(where, "expected an array of sets");
  for (std::size_t i = 0; i < arr.size(); ++i)
    members.push_back(mask_from_json(arr[i], n, where + "[" + std::to_string(i) + "]"));
  return ExplicitFamily(n, std::move(members));
}

}  // namespace

const char* constraint_kind_name(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::None: return "none";
    case ConstraintKind::ComplementOfRings: return "complement_of_rings";
    case ConstraintKind::ComplementOfIntersecting: return "complement_of_intersecting";
    case ConstraintKind::ComplementOfCrossing: return "complement_of_crossing";
    case ConstraintKind::Explicit: return "explicit";
  }
  return "unknown";
}

json mask_to_json(SubsetMask mask) {
  json arr = json::array();
  mask.for_each_element([&](int v) { arr.push_back(v); });
  return arr;
}

SubsetMask mask_from_json(const json& arr, int n, const std::string& where) {
  if (!arr.is_array()) fail(where, "expected an array of element indices");
  SubsetMask out;
  for (const json& e : arr) {
    if (!e.is_number_integer()) fail(where, "element indices must be integers");
    const std::int64_t v = e.get<std::int64_t>();
    if (v < 0 || v >= n) fail(where, "element index " + std::to_string(v) + " outside [0," +
                                         std::to_string(n - 1) + "]");
    out = out.with(static_cast<int>(v));
  }
  return out;
}

std::string digest_of(const json& doc) {
  const std::string text = doc.dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Instance parse_instance(const json& doc) {
  if (!doc.is_object()) fail("instance", "expected a JSON object");
  const std::int64_t version = doc.value("schema_version", std::int64_t{kSchemaVersion});
  if (version != kSchemaVersion)
    fail("schema_version", "unsupported version " + std::to_string(version));

  GroundSet ground = parse_ground(doc);
  const int n = ground.size();
  auto oracle = parse_function(need(doc, "function", "instance"), n, "function");

  const json& constraint = need(doc, "constraint", "instance");
  const std::string kind = need(constraint, "kind", "constraint").get<std::string>();
  const int declared_k = static_cast<int>(doc.value("k", std::int64_t{0}));

  Instance out{std::move(ground), std::move(oracle), {}, ConstraintKind::None,
               declared_k, 0, {}, std::nullopt, {}, ""};

  if (kind == "none") {
    out.kind = ConstraintKind::None;
    if (declared_k != 0) fail("k", "constraint kind none requires k = 0");
    out.family.member = [](SubsetMask) { return true; };
    out.family.hierarchy_bound = 0;
  } else if (kind == "complement_of_rings") {
    out.kind = ConstraintKind::ComplementOfRings;
    const json& rings = need(constraint, "rings", "constraint");
    if (!rings.is_array() || rings.empty()) fail("constraint.rings", "expected a nonempty array");
    for (std::size_t i = 0; i < rings.size(); ++i)
      out.rings.push_back(parse_ring(rings[i], n, "constraint.rings[" + std::to_string(i) + "]"));
    if (declared_k != static_cast<int>(out.rings.size()))
      fail("k", "complement_of_rings requires k = number of rings");
    out.family = complement_of_rings(out.rings);
  } else if (kind == "complement_of_intersecting" || kind == "complement_of_crossing") {
    out.kind = kind == "complement_of_intersecting" ? ConstraintKind::ComplementOfIntersecting
                                                    : ConstraintKind::ComplementOfCrossing;
    out.excluded_list = parse_family(need(constraint, "members", "constraint"), n, "constraint.members");
    if (declared_k != 2) fail("k", std::string(kind) + " requires k = 2");
    // The feasible region is the plain complement of the listed family; the
    // solver wrappers handle the adjunction of the boundary sets themselves.
    out.family = complement_of_explicit(*out.excluded_list, 2);
  } else if (kind == "explicit") {
    out.kind = ConstraintKind::Explicit;
    out.excluded_list = parse_family(need(constraint, "excluded", "constraint"), n, "constraint.excluded");
    if (declared_k < 0 || declared_k > n) fail("k", "hierarchy bound out of range");
    if (constraint.contains("witness_partition")) {
      const json& parts = constraint["witness_partition"];
      for (std::size_t i = 0; i < parts.size(); ++i)
        out.witness_partition.push_back(
            parse_family(parts[i], n, "constraint.witness_partition[" + std::to_string(i) + "]"));
    }
    out.family = complement_of_explicit(*out.excluded_list, declared_k, out.witness_partition);
  } else {
    fail("constraint.kind", "unknown constraint kind \"" + kind + "\"");
  }

  const std::int64_t structural = out.oracle->value_bound();
  out.value_bound = doc.contains("value_bound") ? need_int(doc, "value_bound", "instance") : structural;
  if (out.value_bound < structural)
    fail("value_bound", "declared bound " + std::to_string(out.value_bound) +
                            " understates the function's range bound " + std::to_string(structural));
  out.digest = digest_of(doc);
  return out;
}

Instance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& err) {
    throw ParseError(path + ": " + err.what());
  }
  return parse_instance(doc);
}

const char* status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::NumericalStall: return "numerical_stall";
  }
  return "unknown";
}

json report_to_json(const SolveReport& report, const Instance& instance,
                    std::optional<std::uint64_t> seed) {
  json doc;
  doc["version"] = kLibraryVersion;
  doc["instance_digest"] = instance.digest;
  if (seed) doc["seed"] = *seed;
  doc["status"] = status_name(report.status);
  doc["candidates_examined"] = report.candidates_examined;
  doc["feasible_candidates"] = report.feasible_candidates;
  doc["oracle_calls"] = report.oracle_calls;
  doc["wall_ms"] = report.wall_ms;
  if (report.status == SolveStatus::Optimal) {
    doc["value"] = report.value;
    doc["minimizer"] = mask_to_json(report.minimizer);
    json labels = json::array();
    report.minimizer.for_each_element(
        [&](int v) { labels.push_back(instance.ground.label(v)); });
    doc["minimizer_labels"] = labels;
  }
  return doc;
}

json kth_report_to_json(const KthSmallestResult& result, const Instance& instance) {
  json doc;
  doc["version"] = kLibraryVersion;
  doc["instance_digest"] = instance.digest;
  doc["values"] = result.values;
  json witnesses = json::array();
  for (SubsetMask w : result.witnesses) witnesses.push_back(mask_to_json(w));
  doc["witnesses"] = witnesses;
  doc["oracle_calls"] = result.oracle_calls;
  return doc;
}

}  // namespace csfm
