// Copyright 2026 The dressed-cool Authors
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

#include <functional>
#include <string>
#include <vector>

#include "dressed_cool/model.hpp"

namespace dressed_cool {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Reference device at the resonant cooling point (dq' = 0, delta_c = -Omega_R)
/// with the given photon number, T1 = 10 us, T2 = 10.6 us and gamma_up = 0.
SystemParams reference_params(double n_bar);

/// Runs the end-to-end acceptance checks in order. `on_result` is called as
/// each one finishes. Exceptions inside a check mark it failed.
std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS [n] name: detail (t s)" or "FAIL ...".
std::string format_result(const CriterionResult& result);

}  // namespace dressed_cool
