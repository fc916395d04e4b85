#include "relaynet/units.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <utility>
#include <vector>

namespace relaynet {

namespace {

struct Unit {
  const char* name;
  int exponent;  // power of ten relative to the base unit
};

const std::vector<Unit>& units_for(Dimension dim) {
  static const std::vector<Unit> energy{{"J", 0}, {"mJ", -3}, {"uJ", -6}, {"kJ", 3}};
  static const std::vector<Unit> power{{"W", 0}, {"mW", -3}, {"uW", -6}};
  static const std::vector<Unit> length{{"m", 0}, {"km", 3}};
  static const std::vector<Unit> freq{{"GHz", 0}, {"MHz", -3}, {"kHz", -6}, {"Hz", -9}};
  static const std::vector<Unit> decibel{{"dB", 0}, {"dBi", 0}};
  static const std::vector<Unit> angle{{"deg", 0}};
  switch (dim) {
    case Dimension::Energy: return energy;
    case Dimension::Power: return power;
    case Dimension::Length: return length;
    case Dimension::Frequency: return freq;
    case Dimension::Decibel: return decibel;
    case Dimension::Angle: return angle;
  }
  return energy;
}

const char* dimension_name(Dimension dim) {
  switch (dim) {
    case Dimension::Energy: return "energy";
    case Dimension::Power: return "power";
    case Dimension::Length: return "length";
    case Dimension::Frequency: return "frequency";
    case Dimension::Decibel: return "decibel";
    case Dimension::Angle: return "angle";
  }
  return "?";
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double dbm_to_watts(double dbm) { return 1e-3 * db_to_linear(dbm); }

double parse_quantity(const std::string& text, Dimension dim) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end == begin || !std::isfinite(value)) {
    throw UnitError("expected a number with a unit, got '" + text + "'");
  }
  std::string unit(end);
  while (!unit.empty() && std::isspace(static_cast<unsigned char>(unit.front()))) unit.erase(0, 1);
  while (!unit.empty() && std::isspace(static_cast<unsigned char>(unit.back()))) unit.pop_back();
  if (unit.empty()) {
    throw UnitError(std::string("missing ") + dimension_name(dim) + " unit in '" + text + "'");
  }
  if (dim == Dimension::Power) {
    if (unit == "dBm") return dbm_to_watts(value);
    if (unit == "dBW") return db_to_linear(value);
  }
  for (const auto& u : units_for(dim)) {
    if (unit == u.name) {
      double f = std::pow(10.0, std::abs(u.exponent));
      return u.exponent < 0 ? value / f : value * f;
    }
  }
  throw UnitError("unit '" + unit + "' is not a " + dimension_name(dim) + " unit");
}

}  // namespace relaynet
