#pragma once

#include <stdexcept>
#include <string>

namespace relaynet {

enum class Dimension { Energy, Power, Length, Frequency, Decibel, Angle };

class UnitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parses "<number> <unit>" into SI (joules, watts, meters), GHz, dB or degrees.
// Power accepts W, mW, dBm and dBW.
double parse_quantity(const std::string& text, Dimension dim);

double db_to_linear(double db);
double dbm_to_watts(double dbm);

}  // namespace relaynet
