#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "csfm/families.hpp"
#include "csfm/oracle.hpp"
#include "csfm/solver.hpp"
#include "csfm/subset.hpp"

namespace csfm {

// Versioned JSON instance files: a ground set, a function record, a
// constraint record, the declared hierarchy bound, and a value bound for
// the overflow guard. Integers only, so fixtures diff cleanly.

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kLibraryVersion = "1.0.0";

enum class ConstraintKind {
  None,
  ComplementOfRings,
  ComplementOfIntersecting,
  ComplementOfCrossing,
  Explicit,
};

const char* constraint_kind_name(ConstraintKind kind);

struct Instance {
  GroundSet ground;
  std::unique_ptr<SubmodularOracle> oracle;
  ConstraintFamily family;
  ConstraintKind kind = ConstraintKind::None;
  int declared_k = 0;
  std::int64_t value_bound = 0;

  // Structural pieces kept for verify mode.
  std::vector<RingFamily> rings;
  std::optional<ExplicitFamily> excluded_list;  // intersecting/crossing/explicit kinds
  std::vector<ExplicitFamily> witness_partition;

  std::string digest;  // FNV-1a of the canonical serialization
};

// Throws ParseError with a field path on malformed input.
Instance parse_instance(const nlohmann::json& doc);
Instance parse_instance_file(const std::string& path);

// Canonical serialization helpers shared by the generator and tests.
nlohmann::json mask_to_json(SubsetMask mask);
SubsetMask mask_from_json(const nlohmann::json& arr, int n, const std::string& where);
std::string digest_of(const nlohmann::json& doc);

// Report serialization for the solve/kth commands.
nlohmann::json report_to_json(const SolveReport& report, const Instance& instance,
                              std::optional<std::uint64_t> seed = std::nullopt);
nlohmann::json kth_report_to_json(const KthSmallestResult& result, const Instance& instance);

const char* status_name(SolveStatus status);

}  // namespace csfm
