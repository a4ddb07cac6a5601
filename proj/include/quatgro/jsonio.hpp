#pragma once

#include <json.hpp>

#include <string>

#include "quatgro/certify.hpp"
#include "quatgro/gaussian.hpp"
#include "quatgro/norms.hpp"
#include "quatgro/quatmat.hpp"

namespace quatgro {

using Json = nlohmann::json;

// Matrix file format: {"m": rows, "n": cols, "entries": [[[a0,a1,a2,a3],
// ...], ...]} with entries in row-major order.  Parsing throws
// std::invalid_argument with a description of the first violation.
QuatMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const QuatMatrix& m);

// Reads and parses a matrix file; throws std::invalid_argument on missing
// files, malformed JSON, or schema violations.
QuatMatrix load_matrix(const std::string& path);

Json quaternion_to_json(const Quaternion& q);
Json norm_estimate_to_json(const NormEstimate& e);
Json round_result_to_json(const RoundResult& r);
Json certificate_to_json(const Certificate& cert);

}  // namespace quatgro
