// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "spectral_submod/extended_real.hpp"

namespace spectral_submod {

// An interval of the real line with optionally infinite endpoints.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_closed = false;
  bool hi_closed = false;

  static Interval real_line() { return {}; }
  static Interval nonnegative() { return {0.0, std::numeric_limits<double>::infinity(), true, false}; }
  static Interval positive() { return {0.0, std::numeric_limits<double>::infinity(), false, false}; }

  bool contains(double x) const {
    const bool above = lo_closed ? x >= lo : x > lo;
    const bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
  }
};

// The scalar map f that defines the set function I -> tr f(A[I]).
class SpectralFunction {
 public:
  enum class Kind { kPower, kXLogX, kLog, kCustom };

  static SpectralFunction power(double p) {
    SpectralFunction f(Kind::kPower);
    f.exponent_ = p;
    return f;
  }
  static SpectralFunction xlogx() { return SpectralFunction(Kind::kXLogX); }
  static SpectralFunction log() { return SpectralFunction(Kind::kLog); }
  static SpectralFunction custom(std::string name, std::function<double(double)> map,
                                 Interval domain) {
    SpectralFunction f(Kind::kCustom);
    f.name_ = std::move(name);
    f.map_ = std::move(map);
    f.domain_ = domain;
    return f;
  }

  Kind kind() const { return kind_; }
  double exponent() const { return exponent_; }

  Interval domain() const {
    switch (kind_) {
      case Kind::kPower:
        return exponent_ >= 0 ? Interval::nonnegative() : Interval::positive();
      case Kind::kXLogX:
        return Interval::nonnegative();
      case Kind::kLog:
        return Interval::positive();
      case Kind::kCustom:
        return domain_;
    }
    return domain_;
  }

  // Pointwise value on a number already known to be inside the domain.
  double operator()(double x) const {
    switch (kind_) {
      case Kind::kPower:
        if (exponent_ == 0.0) return 1.0;
        return std::pow(x, exponent_);
      case Kind::kXLogX:
        return x == 0.0 ? 0.0 : x * std::log(x);
      case Kind::kLog:
        return std::log(x);
      case Kind::kCustom:
        return map_(x);
    }
    return 0.0;
  }

  // CLI spelling: "power:<p>", "xlogx", "log", or the custom name.
  std::string name() const {
    switch (kind_) {
      case Kind::kPower: {
        std::ostringstream os;
        os.precision(17);
        os << "power:" << exponent_;
        return os.str();
      }
      case Kind::kXLogX:
        return "xlogx";
      case Kind::kLog:
        return "log";
      case Kind::kCustom:
        return name_;
    }
    return name_;
  }

 private:
  explicit SpectralFunction(Kind k) : kind_(k) {}

  Kind kind_;
  double exponent_ = 1.0;
  std::string name_;
  std::function<double(double)> map_;
  Interval domain_;
};

// Parses "power:<p>", "xlogx" or "log".
inline SpectralFunction parse_spectral_function(const std::string& text) {
  if (text == "xlogx") return SpectralFunction::xlogx();
  if (text == "log") return SpectralFunction::log();
  const std::string prefix = "power:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string rest = text.substr(prefix.size());
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != rest.size() || !std::isfinite(p))
      throw Error("bad exponent in function spec '" + text + "'");
    return SpectralFunction::power(p);
  }
  throw Error("unknown function '" + text + "' (expected power:<p>, xlogx or log)");
}

}  // namespace spectral_submod
