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

// The acceptance criteria as executable checks. Each check computes its
// reference values independently of the estimator it judges (direct GMP
// arithmetic or a second algorithm) and reports one PASS/FAIL line.
#ifndef KF_TOOLS_SELFTEST_HPP
#define KF_TOOLS_SELFTEST_HPP

#include <string>
#include <vector>

namespace kf::selftest {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 12;

// Runs one criterion (1-based); never throws, exceptions become FAIL.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_all();

// "PASS  3 baez-duarte-vs-hayman (0.12 s): detail"
std::string format(const CriterionResult& r);

}  // namespace kf::selftest

#endif  // KF_TOOLS_SELFTEST_HPP
