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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rbf/analytic_cdf.hpp"
#include "rbf/validation.hpp"

#include <cmath>
#include <random>

using namespace rbf;

TEST_CASE("empirical cdf")
{
    const EmpiricalCdf f({1.0, 2.0, 2.0, 4.0});
    CHECK(f(0.5) == 0.0);
    CHECK(f(2.0) == 0.75);
    CHECK(f(10.0) == 1.0);
    CHECK_THROWS_AS(EmpiricalCdf({2.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(EmpiricalCdf(std::vector<double>{}), std::invalid_argument);
    CHECK(EmpiricalCdf::from_unsorted({3.0, 1.0, 2.0}).samples() == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("ks critical value and small-sample guard")
{
    std::vector<double> x(10000);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = (static_cast<double>(i) + 0.5) / 10000.0;
    }
    const auto r = ks_distance(EmpiricalCdf(x), [](double s) { return s; });
    CHECK(r.critical == doctest::Approx(0.01358));
    CHECK(r.statistic == doctest::Approx(0.5e-4));
    CHECK(r.pass);
    CHECK_THROWS(ks_distance(EmpiricalCdf({1, 2, 3}), [](double s) { return s; }));
}

TEST_CASE("constant samples fail against a continuous law")
{
    const std::vector<double> x(100, 1.0);
    const auto r = ks_distance(EmpiricalCdf(x), [](double s) { return 1.0 - std::exp(-s); });
    CHECK(r.statistic >= 0.5);
    CHECK_FALSE(r.pass);
}

TEST_CASE("samples drawn through the inverse law pass")
{
    const auto law = GeneralQuadraticCdf(ShiftedPowerProduct::from_rates(std::vector<double>{1.0, 2.5, 0.4}), 2);
    std::mt19937_64 engine(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x;
    for (int i = 0; i < 10000; ++i) {
        x.push_back(invert_cdf(law, u(engine)));
    }
    const auto r = ks_distance(EmpiricalCdf::from_unsorted(x), law);
    CHECK(r.pass);
}

TEST_CASE("ks distance is invariant under monotone transforms")
{
    std::mt19937_64 engine(5);
    std::exponential_distribution<double> e(1.0);
    std::vector<double> x;
    std::vector<double> y;
    for (int i = 0; i < 2000; ++i) {
        x.push_back(e(engine));
        y.push_back(std::log(x.back()));
    }
    const auto a = ks_distance(EmpiricalCdf::from_unsorted(x), [](double s) { return 1.0 - std::exp(-s / 1.1); });
    const auto b =
        ks_distance(EmpiricalCdf::from_unsorted(y), [](double t) { return 1.0 - std::exp(-std::exp(t) / 1.1); });
    CHECK(a.statistic == doctest::Approx(b.statistic).epsilon(1e-12));
}

TEST_CASE("two-sample ks")
{
    std::mt19937_64 engine(6);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> c;
    for (int i = 0; i < 5000; ++i) {
        a.push_back(n(engine));
        b.push_back(n(engine));
        c.push_back(n(engine) + 0.2);
    }
    const auto same = ks_two_sample(EmpiricalCdf::from_unsorted(a), EmpiricalCdf::from_unsorted(b));
    const auto shifted = ks_two_sample(EmpiricalCdf::from_unsorted(a), EmpiricalCdf::from_unsorted(c));
    CHECK(same.critical == doctest::Approx(1.358 * std::sqrt(2.0 / 5000.0)));
    CHECK(same.pass);
    CHECK_FALSE(shifted.pass);
    const auto self = ks_two_sample(EmpiricalCdf::from_unsorted(a), EmpiricalCdf::from_unsorted(a));
    CHECK(self.statistic == 0.0);
}

TEST_CASE("slope fits")
{
    const std::vector<double> x{1, 2, 3, 4, 5};
    std::vector<double> y;
    for (double v : x) {
        y.push_back(2.0 * v + 1.0);
    }
    auto f = fit_rate_slope(x, y);
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f.residual == doctest::Approx(0.0));

    const std::vector<double> x3{0, 3, 6};
    const std::vector<double> y3{1, 5, 9};
    CHECK(fit_rate_slope(x3, y3).slope == doctest::Approx(4.0 / 3.0).epsilon(1e-15));

    const std::vector<double> flat{2, 2, 2};
    CHECK_THROWS(fit_rate_slope(flat, y3));
    CHECK_THROWS(fit_rate_slope(std::vector<double>{1, 2}, std::vector<double>{1, 2}));

    // bent curve: only the upper half is linear
    const std::vector<double> xb{1, 2, 3, 4, 5, 6};
    const std::vector<double> yb{0, 0, 0, 3, 6, 9};
    CHECK(fit_rate_slope_top_half(xb, yb).slope == doctest::Approx(3.0));
}

TEST_CASE("inverse cdf")
{
    const auto f = [](double s) { return 1.0 - std::exp(-s); };
    CHECK(invert_cdf(f, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(invert_cdf(f, 1.0 - 1e-9) == doctest::Approx(-std::log(1e-9)).epsilon(1e-6));
    CHECK_THROWS(invert_cdf(f, 0.0));
    CHECK_THROWS(invert_cdf(f, 1.0));
}

TEST_CASE("antenna selection behaves like a larger single-antenna population")
{
    const auto one = single_cell_config(2, 1, 10, 2, 10.0);
    const auto trivial = as_miso_equivalence(one, 4000, RngStream(1));
    CHECK(trivial.pass);

    const auto two = single_cell_config(2, 2, 10, 2, 10.0);
    CHECK(as_miso_equivalence(two, 4000, RngStream(2)).pass);
    CHECK_FALSE(as_miso_equivalence(two, 4000, RngStream(2), 5).pass);
}

TEST_CASE("report records")
{
    const KsReport r{0.01, 100, 0.1358, true};
    const auto j = to_json(r);
    CHECK(j["statistic"] == 0.01);
    CHECK(j["n"] == 100);
    CHECK(j["pass"] == true);
    const auto s = to_json(SlopeFit{2.0, 1.0, 0.0});
    CHECK(s["slope"] == 2.0);
}
