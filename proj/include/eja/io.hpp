#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "eja/algebra.hpp"
#include "eja/inequalities.hpp"
#include "eja/prospector.hpp"
#include "eja/transforms.hpp"

namespace eja {

using Json = nlohmann::ordered_json;

/// Parses "sym:n", "spin:n", or "sum:<spec>+<spec>+...". Throws ArgumentError.
AlgebraDescriptor parse_descriptor(const std::string& spec);

/// Finite numbers as JSON numbers; +-inf and NaN as the strings "inf", "-inf", "nan".
Json number_to_json(double v);
double number_from_json(const Json& j);

Json descriptor_to_json(const AlgebraDescriptor& d);
AlgebraDescriptor descriptor_from_json(const Json& j);

/// {kind, n | factors, coords}.
Json element_to_json(const Element& x);
Element element_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// Dense CSV, one row per line. Symmetry validated to 1e-12, then symmetrized.
SchurMatrix schur_from_csv(const std::string& text);
SchurMatrix schur_from_json(const Json& j);
/// Chooses JSON when the content starts with '[' or '{', CSV otherwise.
SchurMatrix load_schur_matrix(const std::string& path);

Json witness_to_json(const Witness& w);
Json report_to_json(const VerificationReport& r);

Json record_to_json(const SearchRecord& r);
SearchRecord record_from_json(const Json& j);

void write_summary_csv(std::ostream& out, const std::vector<SweepSummary>& rows);

std::string read_file(const std::string& path);

}  // namespace eja
