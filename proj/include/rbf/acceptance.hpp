// SPDX-License-Identifier: Apache-2.0
//
// rbf-lab: multi-cell MIMO random beamforming laboratory
// Copyright (C) 2026 The rbf-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RBF_ACCEPTANCE_HPP
#define RBF_ACCEPTANCE_HPP

#include "rbf/scheduler.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rbf {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    nlohmann::json data;
};

struct AcceptanceOptions {
    std::uint64_t seed = 20100101;
    SimulationOptions sim;
};

inline constexpr int kCriterionCount = 9;

std::string_view criterion_name(int id);
CriterionResult run_criterion(int id, const AcceptanceOptions &opts = {});

// Suites: cdf, scaling, sweep, dof, equivalence, all. Throws on unknown names.
std::vector<int> suite_criteria(std::string_view suite);
std::vector<CriterionResult> run_suite(std::string_view suite, const AcceptanceOptions &opts = {});

nlohmann::json to_json(const CriterionResult &r);
// "[PASS] 3 name: detail"
std::string format_result(const CriterionResult &r);

} // namespace rbf

#endif // RBF_ACCEPTANCE_HPP
