#pragma once

#include "nnr/matrix.hpp"

#include <iosfwd>
#include <string>

namespace nnr {

// Shared matrix file formats:
//   CSV  — headerless, one row per line, comma-separated decimals (p/q also accepted)
//   JSON — {"rows": n, "cols": m, "data": [[row...], ...]}
// Readers keep decimals exact; writers emit the exact decimal expansion when
// the reduced denominator is 2^a*5^b, else 17 significant digits.

Matrix read_matrix_csv(std::istream& in, Backend backend = Backend::Exact);
Matrix parse_matrix_csv(const std::string& text, Backend backend = Backend::Exact);
std::string write_matrix_csv(const Matrix& m);

struct JsonMatrix {
  Matrix matrix;
  bool normalize = false;  // optional "normalize": true flag (joint tables)
};

JsonMatrix parse_matrix_json(const std::string& text, Backend backend = Backend::Exact);
std::string write_matrix_json(const Matrix& m);

// Dispatch on extension: .json uses the JSON schema, anything else CSV.
Matrix load_matrix(const std::string& path, Backend backend = Backend::Exact);
void save_matrix(const std::string& path, const Matrix& m);

}  // namespace nnr
