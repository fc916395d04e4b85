#pragma once

#include <yaml-cpp/yaml.h>

#include <initializer_list>
#include <string>

#include "relaynet/errors.hpp"
#include "relaynet/units.hpp"

namespace relaynet::yaml {

inline int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

inline YAML::Node load_file(const std::string& path) {
  try {
    return YAML::LoadFile(path);
  } catch (const YAML::BadFile&) {
    throw ConfigError("cannot read '" + path + "'");
  } catch (const YAML::ParserException& e) {
    throw ConfigError(e.msg, e.mark.line + 1);
  }
}

inline void require_map(const YAML::Node& n, const std::string& where) {
  if (!n.IsMap()) throw ConfigError("'" + where + "' must be a mapping", line_of(n));
}

inline void allow_keys(const YAML::Node& n, const std::string& where, std::initializer_list<const char*> keys) {
  require_map(n, where);
  for (const auto& kv : n) {
    auto key = kv.first.as<std::string>();
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw ConfigError("unknown key '" + key + "' in '" + where + "'", line_of(kv.first));
  }
}

inline YAML::Node child(const YAML::Node& n, const std::string& where, const char* key) {
  YAML::Node c = n[key];
  if (!c) throw ConfigError("missing key '" + std::string(key) + "' in '" + where + "'", line_of(n));
  return c;
}

inline double number(const YAML::Node& n, const std::string& key) {
  try {
    return n.as<double>();
  } catch (const YAML::Exception&) {
    throw ConfigError("'" + key + "' must be a plain number", line_of(n));
  }
}

inline long integer(const YAML::Node& n, const std::string& key) {
  try {
    return n.as<long>();
  } catch (const YAML::Exception&) {
    throw ConfigError("'" + key + "' must be an integer", line_of(n));
  }
}

inline bool boolean(const YAML::Node& n, const std::string& key) {
  try {
    return n.as<bool>();
  } catch (const YAML::Exception&) {
    throw ConfigError("'" + key + "' must be true or false", line_of(n));
  }
}

inline std::string text(const YAML::Node& n, const std::string& key) {
  if (!n.IsScalar()) throw ConfigError("'" + key + "' must be a scalar", line_of(n));
  return n.Scalar();
}

inline double quantity(const YAML::Node& n, const std::string& key, Dimension dim) {
  if (!n.IsScalar()) throw ConfigError("'" + key + "' must be a quantity with unit", line_of(n));
  try {
    return parse_quantity(n.Scalar(), dim);
  } catch (const UnitError& e) {
    throw ConfigError("'" + key + "': " + e.what(), line_of(n));
  }
}

}  // namespace relaynet::yaml
