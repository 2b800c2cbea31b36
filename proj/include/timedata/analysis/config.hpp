#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "timedata/error.hpp"
#include "timedata/linkmodel.hpp"

namespace timedata::analysis {

/// Targets and defaults read from an INI file:
///
///   [defaults]
///   base_time = 13:35:00
///
///   [target.Sun]
///   distance_km = 146000000
///   range_lm = 8.3
struct Config {
  std::vector<link::Target> targets;
  std::optional<link::Timestamp> base_time;
};

namespace detail {

inline double config_number(const boost::property_tree::ptree& section, const std::string& section_name,
                            const char* key) {
  const auto raw = section.get_optional<std::string>(key);
  if (!raw) throw domain_error("[" + section_name + "] is missing '" + key + "'");
  try {
    std::size_t used = 0;
    const double v = std::stod(*raw, &used);
    if (used != raw->size()) throw std::invalid_argument(*raw);
    return v;
  } catch (const std::logic_error&) {
    throw domain_error("[" + section_name + "] " + key + " = '" + *raw + "' is not a number");
  }
}

}  // namespace detail

inline Config load_config(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw parse_error(e.line(), e.message());
  }

  Config cfg;
  constexpr std::string_view prefix = "target.";
  for (const auto& [name, section] : tree) {
    if (name == "defaults") {
      if (const auto t = section.get_optional<std::string>("base_time")) {
        cfg.base_time = link::Timestamp::parse(*t);
      }
    } else if (name.rfind(prefix, 0) == 0 && name.size() > prefix.size()) {
      cfg.targets.push_back(link::Target::make(name.substr(prefix.size()),
                                               detail::config_number(section, name, "distance_km"),
                                               detail::config_number(section, name, "range_lm")));
    } else {
      throw domain_error("unknown config section [" + name + "]");
    }
  }
  return cfg;
}

inline Config load_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw file_error(path, "cannot open config");
  try {
    return load_config(file);
  } catch (const parse_error& e) {
    throw file_error(path, e.what());
  }
}

}  // namespace timedata::analysis
