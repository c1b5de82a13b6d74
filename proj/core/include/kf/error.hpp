// Copyright 2026 The kf Authors
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

#ifndef KF_ERROR_HPP
#define KF_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace kf {

// Every domain failure in the library is reported through kf::Error. The
// code name is stable and is echoed verbatim by the command-line tool.
enum class ErrorCode {
  // series
  ZeroConstantTerm,
  NonzeroInnerConstant,
  IndexBeyondTruncation,
  NegativeCoefficient,
  // numerics
  DomainError,
  UnsupportedOrder,
  BracketInvalid,
  NoConvergence,
  // khinchin
  NoCoefficientAccess,
  RadiusOutOfRange,
  DerivativeOrderUnavailable,
  ComplexEvalUnavailable,
  ZeroMean,
  NotEntire,
  // catalog
  InvalidSpec,
  TruncationTooLarge,
  NoApproxAvailable,
  NoAxisFormula,
  // asym
  TargetAboveMeanSup,
  QGcdNotOne,
  GcdNotOne,
  UnsupportedColoredOrder,
  WindowTooNarrow,
  // large_powers
  BudgetExceeded,
  RatioOutOfBand,
  QGcdViolation,
  LAboveMeanSup,
  BoundaryVarianceInfinite,
  FirstCoefficientZero,
  RegimeMismatch,
  KTooLarge,
  NotUSG,
  PrefactorRadiusTooSmall,
  NoApplicableRegime,
  // lagrange
  MeanSupBelowOne,
  ZeroCoefficient,
  IndexBelowJ,
  ParameterDomain,
  SupercriticalSpec,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, std::string detail);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }
  const std::string& module() const noexcept { return module_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string module_;
  std::string detail_;
};

}  // namespace kf

#endif  // KF_ERROR_HPP
