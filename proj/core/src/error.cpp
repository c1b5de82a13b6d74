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

#include "kf/error.hpp"

#include <utility>

namespace kf {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::NonzeroInnerConstant: return "NonzeroInnerConstant";
    case ErrorCode::IndexBeyondTruncation: return "IndexBeyondTruncation";
    case ErrorCode::NegativeCoefficient: return "NegativeCoefficient";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::BracketInvalid: return "BracketInvalid";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NoCoefficientAccess: return "NoCoefficientAccess";
    case ErrorCode::RadiusOutOfRange: return "RadiusOutOfRange";
    case ErrorCode::DerivativeOrderUnavailable: return "DerivativeOrderUnavailable";
    case ErrorCode::ComplexEvalUnavailable: return "ComplexEvalUnavailable";
    case ErrorCode::ZeroMean: return "ZeroMean";
    case ErrorCode::NotEntire: return "NotEntire";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::TruncationTooLarge: return "TruncationTooLarge";
    case ErrorCode::NoApproxAvailable: return "NoApproxAvailable";
    case ErrorCode::NoAxisFormula: return "NoAxisFormula";
    case ErrorCode::TargetAboveMeanSup: return "TargetAboveMeanSup";
    case ErrorCode::QGcdNotOne: return "QGcdNotOne";
    case ErrorCode::GcdNotOne: return "GcdNotOne";
    case ErrorCode::UnsupportedColoredOrder: return "UnsupportedColoredOrder";
    case ErrorCode::WindowTooNarrow: return "WindowTooNarrow";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::RatioOutOfBand: return "RatioOutOfBand";
    case ErrorCode::QGcdViolation: return "QGcdViolation";
    case ErrorCode::LAboveMeanSup: return "LAboveMeanSup";
    case ErrorCode::BoundaryVarianceInfinite: return "BoundaryVarianceInfinite";
    case ErrorCode::FirstCoefficientZero: return "FirstCoefficientZero";
    case ErrorCode::RegimeMismatch: return "RegimeMismatch";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::NotUSG: return "NotUSG";
    case ErrorCode::PrefactorRadiusTooSmall: return "PrefactorRadiusTooSmall";
    case ErrorCode::NoApplicableRegime: return "NoApplicableRegime";
    case ErrorCode::MeanSupBelowOne: return "MeanSupBelowOne";
    case ErrorCode::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorCode::IndexBelowJ: return "IndexBelowJ";
    case ErrorCode::ParameterDomain: return "ParameterDomain";
    case ErrorCode::SupercriticalSpec: return "SupercriticalSpec";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& module,
                           const std::string& detail) {
  std::string msg(error_name(code));
  msg += " [";
  msg += module;
  msg += "]";
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}

}  // namespace

Error::Error(ErrorCode code, std::string module, std::string detail)
    : std::runtime_error(format_message(code, module, detail)),
      code_(code),
      module_(std::move(module)),
      detail_(std::move(detail)) {}

}  // namespace kf
