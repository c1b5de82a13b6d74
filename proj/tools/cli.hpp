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

// Command-line front end. Everything here is a thin layer over the core
// library: parse, validate, compute, then print one homogeneous table.
#ifndef KF_TOOLS_CLI_HPP
#define KF_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "kf/numerics.hpp"

namespace kf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // selftest with a failing criterion
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;

// A homogeneous table. Text columns are never reinterpreted as numbers (exact
// rationals, names); the others become JSON numbers when they parse as such.
struct Table {
  std::vector<std::string> header;
  std::vector<bool> text;
  std::vector<std::vector<std::string>> rows;

  void add_column(std::string name, bool is_text = false);
  void add_row(std::vector<std::string> row);
};

// 12 significant digits.
std::string decimal(double x);
// Decimal when |ln| <= 700, otherwise empty.
std::string decimal(const LogNumber& x);
// "ln=<value>", "ln=-inf" for zero.
std::string log_cell(const LogNumber& x);

std::string emit_csv(const Table& t);
std::string emit_table(const Table& t);
std::string emit_jsonl(const Table& t);

// Exit codes as above; output on `out`, diagnostics on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kf::cli

#endif  // KF_TOOLS_CLI_HPP
