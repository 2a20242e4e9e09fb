#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "specgeo/closed_form.hpp"
#include "specgeo/comparison.hpp"
#include "specgeo/curvature.hpp"
#include "specgeo/discrete.hpp"
#include "specgeo/spectrum.hpp"

namespace specgeo {

using nlohmann::json;

/// Shortest round-trip decimal form of a double ("inf"/"-inf" for infinities).
std::string format_double(double value);

// Spectrum: {"cutoff": x, "entries": [[value, mult], ...]}; an infinite
// cutoff is written as null.
json to_json(const Spectrum& spectrum);
Spectrum spectrum_from_json(const json& j);

// CSV with header "value,multiplicity". The cutoff is not part of the CSV;
// the reader takes it as an argument.
std::string to_csv(const Spectrum& spectrum);
Spectrum spectrum_from_csv(std::string_view text, double cutoff);

// Profile: {"groups": [[k, mult], ...]}.
json to_json(const PrincipalCurvatureProfile& profile);
PrincipalCurvatureProfile profile_from_json(const json& j);

// Model: {"factors": [{"dim": d, "rad2": "p/q"}, ...]}. A numeric rad2 is
// accepted and marks the factor as inexact.
json to_json(const ProductSphereModel& model);
ProductSphereModel model_from_json(const json& j);

json to_json(const SymmetricFunctionTable& table);

// Fields: row-major CSV grid, one line per y-row, nx values per line.
std::string field_to_csv(const GridTorus& grid, const Eigen::VectorXd& field);
Eigen::VectorXd field_from_csv(std::string_view text, const GridTorus& grid);

json to_json(const ComparisonReport& report);
json to_json(const IndexBoundReport& report);
json to_json(const CertificateReport& report);
json to_json(const CoordinateEigenfunctionReport& report);
json to_json(const NewtonEigenfunctionReport& report);
json to_json(const ConvergenceTable& table);

/// Columns: resolution,mode,exact,approx,error[,order]. The order column is
/// present only when the table has more than one resolution.
std::string to_csv(const ConvergenceTable& table);

}  // namespace specgeo
