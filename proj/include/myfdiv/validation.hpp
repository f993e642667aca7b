//------------------------------------------------------------------------------
//
//   Copyright 2026 The myfdiv Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
#pragma once

// The acceptance suite shared by the acceptance test and `myfdiv selftest`.

#include "myfdiv/catalog.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace myfdiv {

struct CriterionResult
{
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst observed error, in the units of `tolerance`
  double tolerance = 0.0;
  double seconds = 0.0;
  std::string detail;
};

struct SuiteOptions
{
  /// Comma-separated criterion names or numbers; empty runs everything.
  std::string filter;
  /// Adds 1e-3 (x - 1)^2 to phi_plus of this generator everywhere in the suite.
  std::optional<Generator> inject_fault;
};

inline constexpr std::array<std::string_view, 10> criterion_names = {
  "categorical", "gamma", "gradients", "topicality", "kantorovich",
  "my-duality", "structure", "my-properties", "gaussian", "lambert",
};

/// Throws InputError on a filter entry that names no criterion.
std::vector<int> select_criteria(const std::string& filter);

CriterionResult run_criterion(int id, const SuiteOptions& opts = {});
std::vector<CriterionResult> run_acceptance(const SuiteOptions& opts = {});

/// "[PASS] 1 categorical: ..." / "[FAIL] ...". Timings make the line nondeterministic.
std::string format_result(const CriterionResult& r, bool with_time = true);

}  // namespace myfdiv
