#pragma once

// JSON state files:
//   {
//     "convention": {"hbar": 1, "ordering": "q1 p1 q2 p2", "vacuum_variance": 0.5},
//     "cov": [[...4...], ... 4 rows ...],
//     "mean": [q1, p1, q2, p2]        (optional, default 0)
//   }
// The convention block is mandatory and must match exactly.

#include <string>
#include <string_view>

#include "gaussep/states.hpp"

namespace gaussep {

inline constexpr std::string_view kOrdering = "q1 p1 q2 p2";

/// Throws Error{Format} on malformed JSON, a missing or mismatched convention
/// block, or wrongly shaped arrays; NotSymmetric / NonFinite from the matrix.
GaussianState parse_state_file(std::string_view text, double tol = kDefaultTol);

/// Canonical form: sorted keys, two-space indent, shortest round-trip decimals,
/// trailing newline.
std::string serialize_state_file(const GaussianState& state);

/// Shortest decimal that round-trips.
std::string format_double(double x);

}  // namespace gaussep
