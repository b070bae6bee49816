// Copyright 2026 The fpdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FPDYN_ERROR_H_
#define FPDYN_ERROR_H_

#include <stdexcept>
#include <string>

namespace fpdyn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class InvalidStrategyError : public Error {
 public:
  using Error::Error;
};

class TiebreakContractError : public Error {
 public:
  using Error::Error;
};

// Rejected 2x2 equilibrium or normalization input.
class NashError : public Error {
 public:
  enum class Reason { kDegenerateDenominator, kNotInterior };
  NashError(Reason reason, const std::string& what)
      : Error(what), reason_(reason) {}
  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

// A subspace operation was handed a game outside the normal form.
class AssumptionError : public Error {
 public:
  using Error::Error;
};

class TrajectoryError : public Error {
 public:
  using Error::Error;
};

// Bad configuration or command line; `field` names the offending key.
class UsageError : public Error {
 public:
  UsageError(std::string field, const std::string& what)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace fpdyn

#endif  // FPDYN_ERROR_H_
