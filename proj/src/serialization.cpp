#include "specgeo/serialization.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "specgeo/errors.hpp"
#include "specgeo/rational.hpp"

namespace specgeo {

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) {
    return {};
  }
  const auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) {
      break;
    }
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  for (auto& line : split(text, '\n')) {
    if (!line.empty()) {
      out.push_back(line);
    }
  }
  return out;
}

double parse_double(const std::string& s) {
  if (s == "inf" || s == "+inf") {
    return kInfinity;
  }
  if (s == "-inf") {
    return -kInfinity;
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument("not a number: '" + s + "'");
  }
  return value;
}

int parse_int(const std::string& s) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument("not an integer: '" + s + "'");
  }
  return value;
}

json cutoff_json(double cutoff) {
  return std::isinf(cutoff) && cutoff > 0 ? json(nullptr) : json(cutoff);
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s = trim(text);
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(std::stoll(s));
    }
    const auto num = std::stoll(s.substr(0, slash));
    const auto den = std::stoll(s.substr(slash + 1));
    if (den == 0) {
      throw InvalidArgument("zero denominator in '" + s + "'");
    }
    return Rational(num, den);
  } catch (const std::logic_error&) {
    throw InvalidArgument("not a rational: '" + s + "'");
  }
}

std::string to_string(const Rational& q) {
  std::ostringstream out;
  out << q.numerator();
  if (q.denominator() != 1) {
    out << '/' << q.denominator();
  }
  return out.str();
}

std::string format_double(double value) {
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

json to_json(const Spectrum& spectrum) {
  json entries = json::array();
  for (const auto& e : spectrum.entries()) {
    entries.push_back({e.value, e.multiplicity});
  }
  return {{"cutoff", cutoff_json(spectrum.cutoff())}, {"entries", entries}};
}

Spectrum spectrum_from_json(const json& j) {
  try {
    const auto& c = j.at("cutoff");
    const double cutoff = c.is_null() ? kInfinity
                          : c.is_string() ? parse_double(c.get<std::string>())
                                          : c.get<double>();
    std::vector<SpectrumEntry> entries;
    for (const auto& e : j.at("entries")) {
      if (!e.is_array() || e.size() != 2) {
        throw InvalidArgument("spectrum entry must be [value, multiplicity]");
      }
      entries.push_back({e[0].get<double>(), e[1].get<int>()});
    }
    return Spectrum(std::move(entries), cutoff);
  } catch (const json::exception& ex) {
    throw InvalidArgument(std::string("malformed spectrum JSON: ") + ex.what());
  }
}

std::string to_csv(const Spectrum& spectrum) {
  std::string out = "value,multiplicity\n";
  for (const auto& e : spectrum.entries()) {
    out += format_double(e.value) + "," + std::to_string(e.multiplicity) + "\n";
  }
  return out;
}

Spectrum spectrum_from_csv(std::string_view text, double cutoff) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != "value,multiplicity") {
    throw InvalidArgument("spectrum CSV must start with the header value,multiplicity");
  }
  std::vector<SpectrumEntry> entries;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cols = split(lines[i], ',');
    if (cols.size() != 2) {
      throw InvalidArgument("spectrum CSV row must have two columns");
    }
    entries.push_back({parse_double(cols[0]), parse_int(cols[1])});
  }
  return Spectrum(std::move(entries), cutoff);
}

json to_json(const PrincipalCurvatureProfile& profile) {
  json groups = json::array();
  for (const auto& g : profile.groups()) {
    groups.push_back({g.k, g.multiplicity});
  }
  return {{"groups", groups}};
}

PrincipalCurvatureProfile profile_from_json(const json& j) {
  try {
    std::vector<CurvatureGroup> groups;
    for (const auto& g : j.at("groups")) {
      if (!g.is_array() || g.size() != 2) {
        throw InvalidArgument("curvature group must be [k, multiplicity]");
      }
      groups.push_back({g[0].get<double>(), g[1].get<int>()});
    }
    return PrincipalCurvatureProfile(std::move(groups));
  } catch (const json::exception& ex) {
    throw InvalidArgument(std::string("malformed profile JSON: ") + ex.what());
  }
}

json to_json(const ProductSphereModel& model) {
  json factors = json::array();
  for (const auto& f : model.factors()) {
    json rad2 = f.exact_rad2 ? json(to_string(*f.exact_rad2)) : json(f.rad2);
    factors.push_back({{"dim", f.dim}, {"rad2", rad2}});
  }
  return {{"factors", factors}};
}

ProductSphereModel model_from_json(const json& j) {
  try {
    std::vector<RoundSphereFactor> factors;
    for (const auto& f : j.at("factors")) {
      const int dim = f.at("dim").get<int>();
      const auto& rad2 = f.at("rad2");
      if (rad2.is_string()) {
        factors.push_back(RoundSphereFactor::exact(dim, parse_rational(rad2.get<std::string>())));
      } else if (rad2.is_number_integer()) {
        factors.push_back(RoundSphereFactor::exact(dim, Rational(rad2.get<std::int64_t>())));
      } else {
        factors.push_back(RoundSphereFactor::inexact(dim, rad2.get<double>()));
      }
    }
    return ProductSphereModel(std::move(factors));
  } catch (const json::exception& ex) {
    throw InvalidArgument(std::string("malformed model JSON: ") + ex.what());
  }
}

json to_json(const SymmetricFunctionTable& table) {
  return {{"S", table.S}, {"H", table.H}, {"F", table.F}};
}

std::string field_to_csv(const GridTorus& grid, const Eigen::VectorXd& field) {
  if (field.size() != grid.node_count()) {
    throw InvalidArgument("field size does not match the grid");
  }
  std::string out;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      if (i > 0) {
        out += ',';
      }
      out += format_double(field[grid.index(i, j)]);
    }
    out += '\n';
  }
  return out;
}

Eigen::VectorXd field_from_csv(std::string_view text, const GridTorus& grid) {
  const auto lines = lines_of(text);
  if (static_cast<int>(lines.size()) != grid.ny) {
    throw InvalidArgument("field CSV row count does not match the grid");
  }
  Eigen::VectorXd field(grid.node_count());
  for (int j = 0; j < grid.ny; ++j) {
    const auto cols = split(lines[j], ',');
    if (static_cast<int>(cols.size()) != grid.nx) {
      throw InvalidArgument("field CSV column count does not match the grid");
    }
    for (int i = 0; i < grid.nx; ++i) {
      field[grid.index(i, j)] = parse_double(cols[i]);
    }
  }
  return field;
}

json to_json(const ComparisonReport& report) {
  json j = {{"a", report.a},
            {"a0", report.a0},
            {"branch", to_string(report.branch)},
            {"lhs_count", report.lhs_count},
            {"rhs_count", report.rhs_count},
            {"verdict", report.verdict}};
  if (report.lhs_strict_count) {
    j["lhs_strict_count"] = *report.lhs_strict_count;
    j["rhs_strict_count"] = *report.rhs_strict_count;
  }
  return j;
}

json to_json(const IndexBoundReport& report) {
  json contributing = json::array();
  for (const auto& e : report.contributing) {
    contributing.push_back({e.value, e.multiplicity});
  }
  return {{"n", report.n},
          {"bound", report.bound},
          {"contributing", contributing},
          {"lambda1", optional_json(report.lambda1)},
          {"lambda1_below_n", report.lambda1_below_n},
          {"multiplicity_at_n", report.multiplicity_at_n},
          {"multiplicity_at_n_at_least_n_plus_3", report.multiplicity_at_n_at_least_n_plus_3},
          {"fullness_witnessed", report.fullness_witnessed}};
}

json to_json(const CertificateReport& report) {
  json floors = json::array();
  for (const auto& f : report.floors) {
    floors.push_back({{"label", f.label},
                      {"eigenvalue", f.eigenvalue},
                      {"count", f.count},
                      {"floor", f.floor},
                      {"met", f.met}});
  }
  return {{"bound", report.bound ? json(*report.bound) : json(nullptr)},
          {"regime", to_string(report.regime)},
          {"floors", floors},
          {"note", report.note}};
}

json to_json(const CoordinateEigenfunctionReport& report) {
  return {{"n", report.n},
          {"S", report.s_value},
          {"n_multiplicity", report.n_multiplicity},
          {"S_multiplicity", report.s_multiplicity},
          {"full", report.full},
          {"passed", report.passed},
          {"offending", optional_json(report.offending)},
          {"detail", report.detail}};
}

json to_json(const NewtonEigenfunctionReport& report) {
  return {{"n", report.n},
          {"r", report.r},
          {"x_eigenvalue", report.x_eigenvalue},
          {"nu_eigenvalue", report.nu_eigenvalue},
          {"x_multiplicity", report.x_multiplicity},
          {"nu_multiplicity", report.nu_multiplicity},
          {"full", report.full},
          {"passed", report.passed},
          {"offending", optional_json(report.offending)},
          {"detail", report.detail}};
}

json to_json(const ConvergenceTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json order = json::array();
    for (const auto& o : row.order) {
      order.push_back(optional_json(o));
    }
    rows.push_back({{"resolution", row.resolution},
                    {"exact", row.exact},
                    {"approx", row.approx},
                    {"error", row.error},
                    {"order", order}});
  }
  return {{"periods", {table.period_x, table.period_y}}, {"rows", rows}};
}

std::string to_csv(const ConvergenceTable& table) {
  const bool with_order = table.rows.size() > 1;
  std::string out = with_order ? "resolution,mode,exact,approx,error,order\n"
                               : "resolution,mode,exact,approx,error\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.exact.size(); ++i) {
      out += std::to_string(row.resolution) + "," + std::to_string(i) + "," +
             format_double(row.exact[i]) + "," + format_double(row.approx[i]) + "," +
             format_double(row.error[i]);
      if (with_order) {
        out += ",";
        if (row.order[i]) {
          out += format_double(*row.order[i]);
        }
      }
      out += "\n";
    }
  }
  return out;
}

}  // namespace specgeo
