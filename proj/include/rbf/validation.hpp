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

#ifndef RBF_VALIDATION_HPP
#define RBF_VALIDATION_HPP

#include "rbf/network.hpp"
#include "rbf/receivers.hpp"
#include "rbf/scheduler.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace rbf {

// Sorted sample of a nonnegative quantity.
class EmpiricalCdf {
public:
    // Rejects empty or unsorted input.
    explicit EmpiricalCdf(std::vector<double> sorted_samples);
    // Sorts a copy first.
    static EmpiricalCdf from_unsorted(std::vector<double> samples);

    std::size_t size() const { return samples_.size(); }
    const std::vector<double> &samples() const { return samples_; }
    // Fraction of samples <= s.
    double operator()(double s) const;

private:
    std::vector<double> samples_;
};

struct KsReport {
    double statistic = 0.0;
    std::int64_t n = 0;   // sample size (effective size for two-sample reports)
    double critical = 0.0; // 0.05 level
    bool pass = false;    // statistic < critical
};

inline constexpr double kKsCritical05 = 1.358;

// One-sample two-sided KS distance against a continuous CDF. Needs n >= 10.
KsReport ks_distance(const EmpiricalCdf &samples, const std::function<double(double)> &analytic);
// Two-sample KS; critical value 1.358 sqrt((n + m) / (n m)).
KsReport ks_two_sample(const EmpiricalCdf &a, const EmpiricalCdf &b);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; // root-mean-square residual
};

// Ordinary least squares; needs >= 3 points with distinct abscissae.
SlopeFit fit_rate_slope(std::span<const double> x, std::span<const double> y);
// Same fit restricted to the upper half of the points by x (ceil(n/2) largest).
SlopeFit fit_rate_slope_top_half(std::span<const double> x, std::span<const double> y);

// Smallest s with F(s) >= u, by bisection on a doubling bracket.
double invert_cdf(const std::function<double(double)> &cdf, double u, double tol = 1e-12);

// SINR of user 0 on beam `beam` of cell `cell`, one per trial (no scheduling).
std::vector<double> user_sinr_samples(const NetworkConfig &cfg, ReceiverKind kind, int cell, int beam,
                                      std::int64_t trials, const RngStream &rng, SimulationOptions opts = {});

// Scheduled SINR of beam 0 in cell 0 under AS with (K, N_R) against the
// scheduled SINR of N_R K single-antenna users under the same gains. The two
// sides draw from independent child streams of rng. miso_users overrides the
// single-antenna population of cell 0.
KsReport as_miso_equivalence(const NetworkConfig &cfg, std::int64_t trials, const RngStream &rng,
                             std::optional<int> miso_users = std::nullopt, SimulationOptions opts = {});

nlohmann::json to_json(const KsReport &r);
nlohmann::json to_json(const SlopeFit &f);

} // namespace rbf

#endif // RBF_VALIDATION_HPP
