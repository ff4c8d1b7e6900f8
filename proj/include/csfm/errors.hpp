#pragma once

#include <stdexcept>
#include <string>

namespace csfm {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ground set exceeds the cap of the requested operation (exhaustive scans,
// validators, or the 64-element global limit).
struct GroundSetTooLarge : Error {
  using Error::Error;
};

// S and T passed to a box restriction are not disjoint.
struct OverlappingST : Error {
  using Error::Error;
};

// Parts passed to a hierarchy validator are not pairwise disjoint.
struct OverlappingParts : Error {
  using Error::Error;
};

// The tie-break transform would overflow 64-bit signed arithmetic.
struct OverflowRisk : Error {
  using Error::Error;
};

// The min-norm-point iteration hit its cycle cap without certifying
// optimality. The answer is unknown, never wrong; callers may fall back
// to brute force on small ground sets.
struct NumericalStall : Error {
  using Error::Error;
};

// Fewer distinct function values exist than were requested.
struct ExhaustedValues : Error {
  ExhaustedValues(const std::string& msg, int found_count)
      : Error(msg), found(found_count) {}
  int found;  // number of distinct values that do exist
};

// A family failed the structural validation it was declared to satisfy.
struct StructureViolation : Error {
  using Error::Error;
};

// Hierarchy bound out of range for the instance (e.g. k > n).
struct InvalidBound : Error {
  using Error::Error;
};

// Malformed instance or report file.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace csfm
