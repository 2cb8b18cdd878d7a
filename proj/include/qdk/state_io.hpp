#pragma once

// State file format:
//   { "dimA": 2, "dimB": 2,
//     "matrix": [[[re, im], [re, im], ...], ...] }
// dims must be JSON integers; the matrix must be (dimA*dimB) square.

#include <filesystem>
#include <string>
#include <string_view>

#include "qdk/states.hpp"

namespace qdk {

/// Throws ParseError on malformed documents, DimensionError/ValidationError
/// when the matrix is not a density operator of the declared shape.
DensityMatrix parse_state(std::string_view text);

DensityMatrix load_state(const std::filesystem::path& path);

/// Serializes in the state file format, entries printed with 17
/// significant digits.
std::string serialize_state(const DensityMatrix& rho);

}  // namespace qdk
