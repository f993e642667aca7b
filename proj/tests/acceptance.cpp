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
//
// Acceptance criteria 1-10: one PASS/FAIL line each, nonzero exit on any failure.

#include "myfdiv/validation.hpp"

#include <cstdio>

int main()
{
  bool all = true;
  for (const auto& r : myfdiv::run_acceptance()) {
    std::printf("%s\n", myfdiv::format_result(r).c_str());
    std::fflush(stdout);
    all = all && r.passed;
  }
  std::printf("%s\n", all ? "acceptance: all criteria passed" : "acceptance: FAILED");
  return all ? 0 : 1;
}
