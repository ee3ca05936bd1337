#pragma once

#include <string>

#include <json.hpp>

#include "qcon/combinatorics.hpp"
#include "qcon/complex_matrix.hpp"
#include "qcon/search.hpp"
#include "qcon/types.hpp"

// Matrix/state wire schema: {"rows": m, "cols": n, "re": [...], "im":
// [...]} row-major; states carry an additional "dims" list.

namespace qcon::io {

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const StateVector& v);
StateVector state_from_json(const nlohmann::json& j);

nlohmann::json latin_to_json(const combinatorics::LatinSquare& sq);
combinatorics::LatinSquare latin_from_json(const nlohmann::json& j);

nlohmann::json table_to_json(const combinatorics::QuantumLatinTable& t);
combinatorics::QuantumLatinTable table_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const CheckReport& r);

nlohmann::json certificate_to_json(const search::SearchCertificate& c);
search::SearchCertificate certificate_from_json(const nlohmann::json& j);

// Write-temp-then-rename so readers never observe a partial file.
void write_atomic(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

}  // namespace qcon::io
