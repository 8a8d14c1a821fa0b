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

// Acceptance runner: one PASS/FAIL line per criterion.
//   rbf_acceptance                 all criteria
//   rbf_acceptance --criterion N   only criterion N
//   rbf_acceptance --json PATH     also write the detailed records

#include "rbf/acceptance.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char **argv)
{
    CLI::App app{"rbf acceptance criteria"};
    std::vector<int> ids;
    std::uint64_t seed = rbf::AcceptanceOptions{}.seed;
    std::string json_path;
    app.add_option("--criterion", ids, "Criterion id(s), 1..9")->check(CLI::Range(1, rbf::kCriterionCount));
    app.add_option("--seed", seed, "Random seed")->capture_default_str();
    app.add_option("--json", json_path, "Write detailed records here");
    CLI11_PARSE(app, argc, argv);

    if (ids.empty()) {
        for (int i = 1; i <= rbf::kCriterionCount; ++i) {
            ids.push_back(i);
        }
    }
    rbf::AcceptanceOptions opts;
    opts.seed = seed;
    bool all = true;
    nlohmann::json records = nlohmann::json::array();
    for (int id : ids) {
        try {
            const auto r = rbf::run_criterion(id, opts);
            std::cout << rbf::format_result(r) << std::endl;
            all = all && r.passed;
            records.push_back(rbf::to_json(r));
        } catch (const std::exception &e) {
            std::cout << "[FAIL] " << id << " " << rbf::criterion_name(id) << ": error: " << e.what() << std::endl;
            all = false;
        }
    }
    if (!json_path.empty()) {
        std::ofstream(json_path) << records.dump(2) << '\n';
    }
    return all ? 0 : 1;
}
