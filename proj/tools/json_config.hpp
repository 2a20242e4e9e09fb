#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace specgeo::cli {

/// CLI11 config reader for JSON files. Top-level keys are global options or
/// subcommand names; a subcommand maps to an object of its own options.
/// Arrays feed multi-value options, e.g. {"index": {"clifford": [1, 2]}}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    return to_json(app, default_also).dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json j;
    try {
      input >> j;
    } catch (const nlohmann::json::exception& ex) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") + ex.what());
    }
    if (!j.is_object()) {
      throw CLI::ConversionError("config must be a JSON object");
    }
    std::vector<CLI::ConfigItem> items;
    collect(j, "", {}, items);
    return items;
  }

 private:
  static std::string scalar(const nlohmann::json& v, const std::string& name) {
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return v.dump();
    throw CLI::ConversionError("unsupported config value for '" + name + "'");
  }

  static void collect(const nlohmann::json& j, const std::string& name,
                      const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out) {
    if (j.is_object()) {
      auto nested = parents;
      if (!name.empty()) nested.push_back(name);
      // "++" / "--" open and close a subcommand section
      if (!name.empty()) out.push_back({nested, "++", {}});
      for (auto it = j.begin(); it != j.end(); ++it) {
        collect(*it, it.key(), nested, out);
      }
      if (!name.empty()) out.push_back({nested, "--", {}});
      return;
    }
    CLI::ConfigItem item;
    item.name = name;
    item.parents = parents;
    if (j.is_array()) {
      for (const auto& v : j) item.inputs.push_back(scalar(v, name));
    } else {
      item.inputs.push_back(scalar(j, name));
    }
    out.push_back(std::move(item));
  }

  static nlohmann::json to_json(const CLI::App* app, bool default_also) {
    nlohmann::json j = nlohmann::json::object();
    for (const CLI::Option* opt : app->get_options({})) {
      if (!opt->get_configurable() || opt->get_single_name().empty()) continue;
      if (opt->count() == 0 && !(default_also && !opt->get_default_str().empty())) continue;
      const auto values = opt->count() > 0 ? opt->results() : std::vector<std::string>{opt->get_default_str()};
      if (opt->get_expected_max() > 1 || values.size() > 1) {
        j[opt->get_single_name()] = values;
      } else if (opt->get_type_size() == 0) {
        j[opt->get_single_name()] = opt->as<bool>();
      } else {
        j[opt->get_single_name()] = values.front();
      }
    }
    for (const CLI::App* sub : app->get_subcommands({})) {
      if (sub->parsed()) j[sub->get_name()] = to_json(sub, default_also);
    }
    return j;
  }
};

}  // namespace specgeo::cli
