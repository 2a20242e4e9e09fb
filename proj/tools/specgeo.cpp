#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json_config.hpp"
#include "specgeo/closed_form.hpp"
#include "specgeo/comparison.hpp"
#include "specgeo/curvature.hpp"
#include "specgeo/discrete.hpp"
#include "specgeo/errors.hpp"
#include "specgeo/experiments.hpp"
#include "specgeo/serialization.hpp"

namespace {

using namespace specgeo;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitUncertified = 3;
constexpr int kExitNoSolution = 4;
constexpr int kExitFalsified = 5;

enum class Format { text, json, csv };

struct OutputOptions {
  bool json = false;
  bool csv = false;
  std::string output;

  Format format() const {
    if (json && csv) throw InvalidArgument("--json and --csv are mutually exclusive");
    return json ? Format::json : csv ? Format::csv : Format::text;
  }
};

void emit(const OutputOptions& out, const std::string& text) {
  if (out.output.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::path path(out.output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("SPECGEO_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
      path = std::filesystem::path(dir) / path;
    }
  }
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream file(path);
  if (!file) {
    throw InvalidArgument("cannot write " + path.string());
  }
  file << text;
}

std::string fmt_num(double v) { return format_double(v); }

std::string spectrum_table(const Spectrum& s) {
  std::string out = fmt::format("{:>24}  {:>12}\n", "eigenvalue", "multiplicity");
  for (const auto& e : s.entries()) {
    out += fmt::format("{:>24}  {:>12}\n", fmt_num(e.value), e.multiplicity);
  }
  out += fmt::format("complete below {}\n", fmt_num(s.cutoff()));
  return out;
}

// Model selection shared by spectrum and index.
struct ModelOptions {
  std::vector<int> clifford;
  std::optional<int> great_sphere;
  std::string model_file;

  void add(CLI::App* cmd) {
    cmd->add_option("--clifford", clifford, "Clifford hypersurface S^m x S^{n-m}: m n")->expected(2);
    cmd->add_option("--great-sphere", great_sphere, "great sphere S^n");
    cmd->add_option("--model", model_file, "model JSON file");
  }

  bool given() const { return !clifford.empty() || great_sphere || !model_file.empty(); }

  ProductSphereModel resolve(int r = 0) const {
    const int chosen = !clifford.empty() + (great_sphere ? 1 : 0) + !model_file.empty();
    if (chosen != 1) {
      throw InvalidArgument("choose exactly one of --clifford, --great-sphere, --model");
    }
    if (!clifford.empty()) {
      return r == 0 ? ProductSphereModel::clifford(clifford[0], clifford[1])
                    : ProductSphereModel::generalized_clifford(clifford[0], clifford[1], r);
    }
    if (r != 0) {
      throw InvalidArgument("--r > 0 needs --clifford m n");
    }
    if (great_sphere) {
      return ProductSphereModel::great_sphere(*great_sphere);
    }
    std::ifstream in(model_file);
    if (!in) {
      throw InvalidArgument("cannot read model file " + model_file);
    }
    try {
      return model_from_json(json::parse(in));
    } catch (const json::exception& ex) {
      throw InvalidArgument(std::string("model file is not valid JSON: ") + ex.what());
    }
  }

  json to_json() const {
    json j = json::object();
    if (!clifford.empty()) j["clifford"] = clifford;
    if (great_sphere) j["great_sphere"] = *great_sphere;
    if (!model_file.empty()) j["model"] = model_file;
    return j;
  }
};

std::pair<double, double> parse_periods(const std::string& text) {
  if (text == "clifford") {
    const double l = 2.0 * M_PI / std::sqrt(2.0);
    return {l, l};
  }
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw InvalidArgument("--periods must be 'clifford' or 'lx,ly'");
  }
  try {
    std::size_t used_x = 0;
    std::size_t used_y = 0;
    const double lx = std::stod(text.substr(0, comma), &used_x);
    const double ly = std::stod(text.substr(comma + 1), &used_y);
    if (used_x != comma || used_y != text.size() - comma - 1 || !(lx > 0.0) || !(ly > 0.0)) {
      throw InvalidArgument("");
    }
    return {lx, ly};
  } catch (const std::exception&) {
    throw InvalidArgument("--periods must be 'clifford' or two positive numbers 'lx,ly'");
  }
}

// ---------------------------------------------------------------- spectrum

struct SpectrumOptions {
  ModelOptions model;
  std::optional<int> grid;
  std::string periods = "clifford";
  std::string op = "laplace";
  int r = 0;
  std::optional<double> cutoff;
  OutputOptions out;
};

json spectrum_config(const SpectrumOptions& o) {
  json j = o.model.to_json();
  if (o.grid) {
    j["grid"] = *o.grid;
    j["periods"] = o.periods;
  }
  j["operator"] = o.op;
  j["r"] = o.r;
  j["cutoff"] = *o.cutoff;
  return j;
}

Spectrum grid_spectrum(const SpectrumOptions& o) {
  if (o.model.given()) {
    throw InvalidArgument("--grid cannot be combined with a model");
  }
  if (o.op == "lr") {
    throw InvalidArgument("--operator lr is closed-form only");
  }
  const auto [lx, ly] = parse_periods(o.periods);
  const auto grid = GridTorus::make(lx, ly, *o.grid, *o.grid);
  auto op = build_laplacian(grid);
  if (o.op == "jacobi") {
    if (o.periods != "clifford") {
      throw InvalidArgument("the grid Jacobi operator Δ_h + 4 is defined for --periods clifford");
    }
    op = add_potential(op, Eigen::VectorXd::Constant(grid.node_count(), 4.0));
  }
  return solve_weighted(op, WeightField::constant(grid.node_count(), 1.0)).truncated(*o.cutoff);
}

int cmd_spectrum(const SpectrumOptions& o) {
  if (!o.cutoff) {
    throw InvalidArgument("--cutoff is required");
  }
  const Format format = o.out.format();
  Spectrum spectrum;
  std::string label;
  if (o.grid) {
    spectrum = grid_spectrum(o);
    label = fmt::format("grid {}x{} ({}), operator {}", *o.grid, *o.grid, o.periods, o.op);
  } else {
    const int r = o.op == "lr" ? o.r : 0;
    if (o.op != "lr" && o.r != 0) {
      throw InvalidArgument("--r applies to --operator lr");
    }
    const auto model = o.model.resolve(r);
    if (o.op == "laplace") {
      spectrum = laplace_spectrum(model, *o.cutoff);
    } else if (o.op == "jacobi") {
      spectrum = jacobi_spectrum(model, *o.cutoff);
    } else {
      spectrum = lr_spectrum(model, r, *o.cutoff);
    }
    label = model.describe() + ", operator " + o.op + (o.op == "lr" ? " r=" + std::to_string(r) : "");
  }
  if (format == Format::json) {
    json j = {{"command", "spectrum"}, {"config", spectrum_config(o)}, {"spectrum", to_json(spectrum)}};
    emit(o.out, j.dump(2) + "\n");
  } else if (format == Format::csv) {
    emit(o.out, to_csv(spectrum));
  } else {
    emit(o.out, label + "\n" + spectrum_table(spectrum));
  }
  return kExitOk;
}

// ------------------------------------------------------------------- index

struct IndexOptions {
  ModelOptions model;
  OutputOptions out;
};

int cmd_index(const IndexOptions& o) {
  const Format format = o.out.format();
  if (format == Format::csv) {
    throw InvalidArgument("index has no CSV form");
  }
  const auto model = o.model.resolve();
  const int n = model.dimension();
  const double s = model.squared_norm();
  const int index = morse_index(model);
  const double l1 = lambda1(model);
  const auto lap = laplace_spectrum(model, std::max(n, static_cast<int>(std::ceil(n + s))) + 1.0);
  const double eps = closed_form_count_tolerance(model, 0, n + s);
  const auto bound = theorem12_bound(lap, n, eps);
  const auto corollary = corollary13(lap, n, eps);
  const auto coords = verify_coordinate_eigenfunctions(model);
  std::optional<CertificateReport> certificate;
  if (s > 0.0) {
    certificate = certify_constant_s(lap, n, s, eps);
  }

  if (format == Format::json) {
    json j = {{"command", "index"},
              {"config", o.model.to_json()},
              {"model", to_json(model)},
              {"description", model.describe()},
              {"n", n},
              {"S", s},
              {"morse_index", index},
              {"lambda1", l1},
              {"theorem12", to_json(bound)},
              {"corollary13", corollary ? json(*corollary) : json(nullptr)},
              {"coordinate_eigenfunctions", to_json(coords)},
              {"certificate", certificate ? to_json(*certificate) : json(nullptr)}};
    emit(o.out, j.dump(2) + "\n");
    return kExitOk;
  }
  std::string text = model.describe() + "\n";
  text += fmt::format("{:<28}{}\n", "dimension n", n);
  text += fmt::format("{:<28}{}\n", "|A|^2 = S", fmt_num(s));
  text += fmt::format("{:<28}{}\n", "Morse index", index);
  text += fmt::format("{:<28}{}\n", "lambda_1", fmt_num(l1));
  text += fmt::format("{:<28}{}{}\n", "Laplace bound N_{<=n}", bound.bound,
                      bound.fullness_witnessed ? "" : "  (not full: multiplicity at n < n+2)");
  text += fmt::format("{:<28}{}\n", "n+4 corollary",
                      corollary ? std::to_string(*corollary) : std::string("not applicable"));
  text += fmt::format("{:<28}{}\n", "coordinate functions", coords.passed ? "ok" : coords.detail);
  if (certificate) {
    text += fmt::format("{:<28}{}\n", "classification", certificate->note);
  }
  emit(o.out, text);
  return kExitOk;
}

// ----------------------------------------------------------------- r-index

struct RIndexOptions {
  std::vector<int> mnr;
  OutputOptions out;
};

int cmd_r_index(const RIndexOptions& o) {
  const Format format = o.out.format();
  if (format == Format::csv) {
    throw InvalidArgument("r-index has no CSV form");
  }
  const int m = o.mnr.at(0);
  const int n = o.mnr.at(1);
  const int r = o.mnr.at(2);
  const auto radii = solve_generalized_clifford(m, n, r);
  const auto model = ProductSphereModel::generalized_clifford(m, n, r);
  const auto& profile = model.profile();
  const auto table = elementary_symmetric(profile);
  const auto newton = newton_eigenvalues(profile, r);
  const auto ellipticity = check_elliptic(profile, r);

  std::optional<int> index;
  std::optional<NewtonEigenfunctionReport> lemma;
  std::optional<CertificateReport> certificate;
  std::string note;
  if (ellipticity.elliptic) {
    index = r_index(model, r);
    lemma = verify_lemma44(model, r);
    const double c = jr_potential(model, r);
    const auto lr = lr_spectrum(model, r, c + 1.0);
    certificate = certify_rmin(lr, n, r, table.S[r], symmetric_function(table, r + 2), false,
                               closed_form_count_tolerance(model, r, c));
  } else {
    note = "L_r is not elliptic at the solved radii; r-index undefined";
  }

  if (format == Format::json) {
    json j = {{"command", "r-index"},
              {"config", {{"m", m}, {"n", n}, {"r", r}}},
              {"r1", radii.r1},
              {"r2", radii.r2},
              {"r1_squared", radii.r1 * radii.r1},
              {"residual", radii.residual},
              {"profile", to_json(profile)},
              {"symmetric_functions", to_json(table)},
              {"newton_eigenvalues", newton.values},
              {"elliptic", ellipticity.elliptic},
              {"ellipticity_margin", ellipticity.margin},
              {"r_index", index ? json(*index) : json(nullptr)},
              {"lemma44", lemma ? to_json(*lemma) : json(nullptr)},
              {"certificate", certificate ? to_json(*certificate) : json(nullptr)},
              {"note", note}};
    emit(o.out, j.dump(2) + "\n");
    return kExitOk;
  }
  std::string text = fmt::format("S^{} x S^{} with S_{} = 0\n", m, n - m, r + 1);
  text += fmt::format("{:<24}{}  (r1^2 = {})\n", "r1", fmt_num(radii.r1), fmt_num(radii.r1 * radii.r1));
  text += fmt::format("{:<24}{}\n", "r2", fmt_num(radii.r2));
  for (const auto& g : profile.groups()) {
    text += fmt::format("{:<24}{} (x{})\n", "principal curvature", fmt_num(g.k), g.multiplicity);
  }
  for (std::size_t i = 0; i < table.S.size(); ++i) {
    text += fmt::format("{:<24}{}\n", fmt::format("S_{}", i), fmt_num(table.S[i]));
  }
  text += fmt::format("{:<24}{}\n", "ellipticity margin", fmt_num(ellipticity.margin));
  if (index) {
    text += fmt::format("{:<24}{}\n", "r-index", *index);
    text += fmt::format("{:<24}{}\n", "coordinate groups", lemma->passed ? "ok" : lemma->detail);
    text += fmt::format("{:<24}{}\n", "classification", certificate->note);
  } else {
    text += note + "\n";
  }
  emit(o.out, text);
  return kExitOk;
}

// ----------------------------------------------------------------- compare

struct CompareOptions {
  int grid = 16;
  std::string periods = "clifford";
  int seeds = 100;
  std::uint64_t seed = 1;
  bool constant_ratio = false;
  OutputOptions out;
};

int cmd_compare(const CompareOptions& o) {
  const Format format = o.out.format();
  const auto [lx, ly] = parse_periods(o.periods);
  ComparisonSuiteConfig config;
  config.grid = GridTorus::make(lx, ly, o.grid, o.grid);
  config.instances = o.seeds;
  config.seed = o.seed;
  config.constant_ratio = o.constant_ratio;
  const auto result = run_comparison_suite(config);
  const std::string branch = o.constant_ratio ? "constant" : "nonconstant";

  if (format == Format::json) {
    json instances = json::array();
    for (const auto& inst : result.instances) {
      json item = to_json(inst.report);
      item["seed"] = inst.seed;
      item["margin"] = inst.margin;
      item["passed"] = inst.passed;
      instances.push_back(item);
    }
    json j = {{"command", "compare"},
              {"config",
               {{"grid", o.grid},
                {"periods", o.periods},
                {"seeds", o.seeds},
                {"seed", o.seed},
                {"constant_ratio", o.constant_ratio},
                {"tolerance", config.tolerance}}},
              {"branch", branch},
              {"instances", result.instances.size()},
              {"passed", result.passed},
              {"worst_margin", result.worst_margin},
              {"all_passed", result.all_passed()},
              {"results", instances}};
    emit(o.out, j.dump(2) + "\n");
  } else if (format == Format::csv) {
    std::string text = "seed,a,a0,lhs_count,rhs_count,margin,passed\n";
    for (const auto& inst : result.instances) {
      text += fmt::format("{},{},{},{},{},{},{}\n", inst.seed, fmt_num(inst.report.a),
                          fmt_num(inst.report.a0), inst.report.lhs_count, inst.report.rhs_count,
                          fmt_num(inst.margin), inst.passed ? 1 : 0);
    }
    emit(o.out, text);
  } else {
    std::string text = fmt::format("{} branch on a {}x{} grid ({}), seeds {}..{}\n", branch, o.grid, o.grid,
                                   o.periods, o.seed, o.seed + o.seeds - 1);
    text += fmt::format("{:<16}{}/{}\n", "passed", result.passed, result.instances.size());
    text += fmt::format("{:<16}{}{}\n", "worst margin", fmt_num(result.worst_margin),
                        o.constant_ratio ? "  (max eigenvalue shift deviation)" : "  (min lhs - rhs)");
    emit(o.out, text);
  }
  if (!result.all_passed()) {
    std::cerr << "comparison inequality violated in " << result.instances.size() - result.passed
              << " instance(s)\n";
    return kExitFalsified;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- converge

struct ConvergeOptions {
  std::string periods = "clifford";
  std::vector<int> res{16, 32, 64};
  int modes = 6;
  OutputOptions out;
};

int cmd_converge(const ConvergeOptions& o) {
  const Format format = o.out.format();
  const auto [lx, ly] = parse_periods(o.periods);
  const auto table = convergence_study(lx, ly, o.res, o.modes);
  if (format == Format::json) {
    json j = {{"command", "converge"},
              {"config", {{"periods", o.periods}, {"res", o.res}, {"modes", o.modes}}},
              {"table", to_json(table)}};
    emit(o.out, j.dump(2) + "\n");
  } else if (format == Format::csv) {
    emit(o.out, to_csv(table));
  } else {
    const bool with_order = table.rows.size() > 1;
    std::string text = fmt::format("{:>6} {:>5} {:>20} {:>22} {:>12}{}\n", "N", "mode", "exact", "approx",
                                   "error", with_order ? fmt::format(" {:>8}", "order") : "");
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.exact.size(); ++i) {
        std::string order;
        if (with_order) {
          order = fmt::format(" {:>8}", row.order[i] ? fmt::format("{:.4f}", *row.order[i]) : "-");
        }
        text += fmt::format("{:>6} {:>5} {:>20} {:>22} {:>12.4e}{}\n", row.resolution, i, fmt_num(row.exact[i]),
                            fmt_num(row.approx[i]), row.error[i], order);
      }
    }
    emit(o.out, text);
  }
  return kExitOk;
}

void add_output(CLI::App* cmd, OutputOptions& out) {
  cmd->add_flag("--json", out.json, "JSON output");
  cmd->add_flag("--csv", out.csv, "CSV output");
  cmd->add_option("--output,-o", out.output, "output file (relative paths resolve under $SPECGEO_OUTPUT_DIR)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral counting toolkit for minimal and r-minimal hypersurfaces in spheres"};
  app.config_formatter(std::make_shared<specgeo::cli::JsonConfig>());
  app.set_config("--config", "", "JSON config file");
  app.require_subcommand(1);
  app.fallthrough();

  SpectrumOptions spectrum;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "spectrum of Δ, J or L_r below a cutoff");
  spectrum.model.add(spectrum_cmd);
  spectrum_cmd->add_option("--grid", spectrum.grid, "finite-difference grid resolution N (N x N)");
  spectrum_cmd->add_option("--periods", spectrum.periods, "grid periods: clifford or lx,ly");
  spectrum_cmd->add_option("--operator", spectrum.op, "laplace, jacobi or lr")
      ->check(CLI::IsMember({"laplace", "jacobi", "lr"}));
  spectrum_cmd->add_option("--r", spectrum.r, "order r of L_r")->check(CLI::NonNegativeNumber);
  spectrum_cmd->add_option("--cutoff", spectrum.cutoff, "eigenvalue cutoff");
  add_output(spectrum_cmd, spectrum.out);

  IndexOptions index;
  auto* index_cmd = app.add_subcommand("index", "Morse index, λ1 and Laplace index bounds");
  index.model.add(index_cmd);
  add_output(index_cmd, index.out);

  RIndexOptions r_index_opts;
  auto* r_index_cmd = app.add_subcommand("r-index", "r-minimal generalized Clifford torus and its r-index");
  r_index_cmd->add_option("mnr", r_index_opts.mnr, "m n r: sphere dimensions and order")->expected(3)->required();
  add_output(r_index_cmd, r_index_opts.out);

  CompareOptions compare;
  auto* compare_cmd = app.add_subcommand("compare", "seeded random checks of the weighted comparison theorem");
  compare_cmd->add_option("--grid", compare.grid, "grid resolution N (N x N)")->check(CLI::PositiveNumber);
  compare_cmd->add_option("--periods", compare.periods, "grid periods: clifford or lx,ly");
  compare_cmd->add_option("--seeds", compare.seeds, "number of instances")->check(CLI::PositiveNumber);
  compare_cmd->add_option("--seed", compare.seed, "first seed");
  compare_cmd->add_flag("--constant-ratio", compare.constant_ratio, "use q = c p");
  add_output(compare_cmd, compare.out);

  ConvergeOptions converge;
  auto* converge_cmd = app.add_subcommand("converge", "finite-difference convergence on a flat torus");
  converge_cmd->add_option("--periods", converge.periods, "clifford or lx,ly");
  converge_cmd->add_option("--res", converge.res, "increasing resolutions")->delimiter(',');
  converge_cmd->add_option("--modes", converge.modes, "distinct eigenvalues to track")->check(CLI::PositiveNumber);
  add_output(converge_cmd, converge.out);

  for (auto* cmd : {spectrum_cmd, index_cmd, r_index_cmd, compare_cmd, converge_cmd}) {
    cmd->configurable();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (spectrum_cmd->parsed()) return cmd_spectrum(spectrum);
    if (index_cmd->parsed()) return cmd_index(index);
    if (r_index_cmd->parsed()) return cmd_r_index(r_index_opts);
    if (compare_cmd->parsed()) return cmd_compare(compare);
    if (converge_cmd->parsed()) return cmd_converge(converge);
  } catch (const specgeo::UncertifiedCount& e) {
    std::cerr << "uncertified: " << e.what() << "\n";
    return kExitUncertified;
  } catch (const specgeo::NoSolution& e) {
    std::cerr << "no solution: " << e.what() << "\n";
    return kExitNoSolution;
  } catch (const specgeo::InvalidArgument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
