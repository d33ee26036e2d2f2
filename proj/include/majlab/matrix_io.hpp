#pragma once

#include <string>

#include <json.hpp>

#include "majlab/linalg.hpp"

// Shared matrix file format: JSON object { "dim": n, "re": [[...]], "im": [[...]] },
// row-major doubles. File writers emit 17 significant digits so values round-trip
// exactly.

namespace majlab {

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// Serialize in the shared file format with %.17g doubles.
std::string matrix_to_file_text(const ComplexMatrix& m);

void save_matrix(const std::string& path, const ComplexMatrix& m);
ComplexMatrix load_matrix(const std::string& path);

} // namespace majlab
