// Copyright 2026 The lyaplab Authors
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


#ifndef LYAP_FIELD_HPP_
#define LYAP_FIELD_HPP_

#include <limits>
#include <stdexcept>
#include <utility>

#include "lyap/potential.hpp"

namespace lyap {

/// A nonnegative potential on R^1 or R^2 seen by a single Brownian path.
/// One-dimensional fields ignore the second coordinate.
class Field {
 public:
  virtual ~Field() = default;
  virtual int dimension() const noexcept = 0;
  virtual double value(double x1, double x2) const = 0;
  /// Queries with |x| beyond this radius are not trustworthy; paths that
  /// leave the disk are truncated.
  virtual double validity_radius() const noexcept {
    return std::numeric_limits<double>::infinity();
  }
};

class ConstantField final : public Field {
 public:
  ConstantField(double c, int dim) : c_(c), dim_(dim) {
    if (!(c >= 0.0)) throw std::invalid_argument("constant field must be >= 0");
    if (dim != 1 && dim != 2) throw std::invalid_argument("dimension must be 1 or 2");
  }
  int dimension() const noexcept override { return dim_; }
  double value(double, double) const override { return c_; }

 private:
  double c_;
  int dim_;
};

/// x -> V(omega + x) on the line.
class TorusRealizationField final : public Field {
 public:
  TorusRealizationField(TorusPotential v, double omega)
      : v_(std::move(v)), omega_(omega) {}
  int dimension() const noexcept override { return 1; }
  double value(double x1, double) const override { return v_(omega_ + x1); }

 private:
  TorusPotential v_;
  double omega_;
};

}  // namespace lyap

#endif  // LYAP_FIELD_HPP_
