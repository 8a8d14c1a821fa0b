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

#ifndef RBF_CLI_HPP
#define RBF_CLI_HPP

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rbf {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum ExitCode : int { exit_pass = 0, exit_fail = 1, exit_usage = 2 };

struct RunManifest {
    std::string command;
    std::string config_digest; // 16 hex digits
    std::uint64_t seed = 0;
    std::string version{kToolVersion};
    std::string timestamp; // UTC, ISO 8601

    // "# command=... digest=... seed=... version=..." (no timestamp, so CSVs
    // stay byte-identical across runs)
    std::string csv_line() const;
    nlohmann::json to_json() const;
};

// FNV-1a over the canonical dump; objects serialize with sorted keys, so the
// digest ignores key order in the source text.
std::string config_digest(const nlohmann::json &doc);

std::string utc_timestamp();

// "a:b:step" (inclusive) or "x,y,z".
std::vector<double> parse_value_list(std::string_view text);
// "a:b" or a single value.
std::vector<int> parse_int_range(std::string_view text);

// Entry point of the rbflab tool; returns the process exit code.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace rbf

#endif // RBF_CLI_HPP
