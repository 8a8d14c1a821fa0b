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

#include "rbf/dof.hpp"

#include <array>
#include <random>
#include <sstream>

using namespace rbf;

namespace {

std::vector<std::array<double, 2>> random_weights(int count, std::uint64_t seed)
{
    std::mt19937_64 engine(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::array<double, 2>> w;
    for (int i = 0; i < count; ++i) {
        w.push_back({u(engine), u(engine)});
    }
    return w;
}

bool contains(const std::vector<DofPoint> &pts, double x, double y)
{
    for (const auto &p : pts) {
        if (std::abs(p.d[0] - x) < 1e-12 && std::abs(p.d[1] - y) < 1e-12) {
            return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("single-cell dof")
{
    CHECK(dof_single_cell(1.0, 4, 2, ReceiverKind::mmse) == 2.0);
    CHECK(dof_single_cell(1.0, 4, 2, ReceiverKind::mf) == doctest::Approx(4.0 / 3.0));
    CHECK(dof_single_cell(1.0, 4, 2, ReceiverKind::as) == doctest::Approx(4.0 / 3.0));
    CHECK(dof_single_cell(0.0, 3, 1, ReceiverKind::mmse) == 0.0);
    CHECK(dof_single_cell(0.5, 2, 2, ReceiverKind::mmse) == 2.0);
    CHECK(dof_single_cell(0.0, 2, 3, ReceiverKind::mmse) == 2.0);
    CHECK(dof_single_cell(5.0, 4, 2, ReceiverKind::mmse) == 4.0);
    CHECK(dof_single_cell(0.0, 1, 1, ReceiverKind::mf) == 1.0);
    CHECK_THROWS(dof_single_cell(-0.1, 4, 2, ReceiverKind::mmse));
    CHECK_THROWS(dof_single_cell(1.0, 0, 2, ReceiverKind::mmse));
}

TEST_CASE("optimal beam count")
{
    auto r = optimal_beams_single_cell(1.0, 5, 3, ReceiverKind::mmse);
    CHECK(r.dof == 4.0);
    CHECK(r.beams == 4);
    r = optimal_beams_single_cell(3.0, 5, 3, ReceiverKind::mmse);
    CHECK(r.dof == 5.0);
    CHECK(r.beams == 5);
    r = optimal_beams_single_cell(0.5, 5, 3, ReceiverKind::mmse);
    CHECK(r.dof == 3.0);
    CHECK(r.beams == 3);
    r = optimal_beams_single_cell(0.9, 5, 3, ReceiverKind::mmse);
    CHECK(r.beams == 4);
    CHECK(r.dof == doctest::Approx(0.9 * 4));
}

TEST_CASE("closed-form optimum equals exhaustive search")
{
    for (ReceiverKind kind : {ReceiverKind::mmse, ReceiverKind::mf, ReceiverKind::as}) {
        for (int nt = 1; nt <= 6; ++nt) {
            for (int nr = 1; nr <= 4; ++nr) {
                for (int k = 0; k <= 160; ++k) {
                    const double alpha = k * 0.05;
                    const auto a = optimal_beams_single_cell(alpha, nt, nr, kind);
                    const auto b = optimal_beams_brute_force(alpha, nt, nr, kind);
                    CHECK(a.dof == b.dof);
                    CHECK(a.beams == b.beams);
                }
            }
        }
    }
}

TEST_CASE("optimum staircase for five transmit and three receive antennas")
{
    int prev = 0;
    for (int k = 0; k <= 60; ++k) {
        const auto r = optimal_beams_single_cell(k * 0.05, 5, 3, ReceiverKind::mmse);
        CHECK(r.beams >= prev);
        CHECK(r.beams >= 3);
        CHECK(r.beams <= 5);
        prev = r.beams;
    }
    CHECK(prev == 5);
}

TEST_CASE("multi-cell dof")
{
    DofQuery q{{1.0, 1.0}, 4, 2, {2, 2}, ReceiverKind::mmse};
    auto p = dof_multi_cell(q);
    CHECK(p.d == std::vector<double>{1.0, 1.0});
    q.kind = ReceiverKind::mf;
    p = dof_multi_cell(q);
    CHECK(p.d[0] == doctest::Approx(2.0 / 3.0));
    CHECK(p.d[1] == doctest::Approx(2.0 / 3.0));

    q = DofQuery{{1.0, 1.0}, 4, 2, {4, 0}, ReceiverKind::mmse};
    p = dof_multi_cell(q);
    CHECK(p.d == std::vector<double>{2.0, 0.0});

    q = DofQuery{{0.3, 0.0}, 4, 4, {2, 1}, ReceiverKind::mmse};
    p = dof_multi_cell(q);
    CHECK(p.d == std::vector<double>{2.0, 1.0});

    q.beams = {5, 0};
    CHECK_THROWS(dof_multi_cell(q));
}

TEST_CASE("one cell reduces to the single-cell formula")
{
    for (ReceiverKind kind : {ReceiverKind::mmse, ReceiverKind::mf}) {
        for (int m = 1; m <= 5; ++m) {
            for (int nr = 1; nr <= 4; ++nr) {
                for (int k = 0; k <= 40; ++k) {
                    const double alpha = k * 0.2;
                    const auto p = dof_multi_cell(DofQuery{{alpha}, 5, nr, {m}, kind});
                    CHECK(p.d[0] == dof_single_cell(alpha, m, nr, kind));
                }
            }
        }
    }
}

TEST_CASE("every cell dof stays within its beam count")
{
    std::mt19937_64 engine(5);
    std::uniform_real_distribution<double> a(0.0, 8.0);
    std::uniform_int_distribution<int> m(0, 4);
    for (int t = 0; t < 500; ++t) {
        DofQuery q{{a(engine), a(engine), a(engine)}, 4, 2, {m(engine), m(engine), m(engine)}, ReceiverKind::mmse};
        const auto p = dof_multi_cell(q);
        for (std::size_t c = 0; c < 3; ++c) {
            CHECK(p.d[c] >= 0.0);
            CHECK(p.d[c] <= q.beams[c]);
        }
    }
}

TEST_CASE("region at the saturation threshold is the full square")
{
    const double alpha[] = {6.0, 6.0};
    const auto region = dof_region(alpha, 4, 2, ReceiverKind::mmse);
    CHECK(region.generators().size() == 25);
    const auto &hull = region.hull();
    CHECK(hull.size() == 4);
    CHECK(contains(hull, 0, 0));
    CHECK(contains(hull, 4, 0));
    CHECK(contains(hull, 4, 4));
    CHECK(contains(hull, 0, 4));
}

TEST_CASE("low-density region")
{
    const double alpha[] = {1.0, 1.0};
    const auto region = dof_region(alpha, 4, 2, ReceiverKind::mmse);
    bool has_half = false;
    bool has_axis = false;
    for (const auto &g : region.generators()) {
        if (g.beams == std::vector<int>{2, 2}) {
            has_half = g.point.d == std::vector<double>{1.0, 1.0};
        }
        if (g.beams == std::vector<int>{4, 0}) {
            has_axis = g.point.d == std::vector<double>{2.0, 0.0};
        }
    }
    CHECK(has_half);
    CHECK(has_axis);
    const std::array<double, 2> x{1.0, 0.0};
    CHECK(region.support(x) == doctest::Approx(3.0));

    // every generator lies inside the hull
    const auto &hull = region.hull();
    for (const auto &g : region.generators()) {
        for (std::size_t i = 0; i < hull.size(); ++i) {
            const auto &a = hull[i].d;
            const auto &b = hull[(i + 1) % hull.size()].d;
            const double cross = (b[0] - a[0]) * (g.point.d[1] - a[1]) - (b[1] - a[1]) * (g.point.d[0] - a[0]);
            CHECK(cross >= -1e-12);
        }
    }
}

TEST_CASE("one-cell region is a segment up to the optimum")
{
    for (double alpha : {0.3, 1.0, 2.5, 7.0}) {
        const double a[] = {alpha};
        const auto region = dof_region(a, 5, 3, ReceiverKind::mmse);
        const double w[] = {1.0};
        CHECK(region.support(w) == optimal_beams_single_cell(alpha, 5, 3, ReceiverKind::mmse).dof);
        CHECK_THROWS(region.hull());
    }
}

TEST_CASE("region upper bound and thresholds")
{
    const auto box = region_upper_bound(2, 4);
    const std::array<double, 2> w{1.0, 1.0};
    CHECK(box.support(w) == 8.0);
    CHECK(box.hull().size() == 4);
    const auto line = region_upper_bound(1, 3);
    const double one[] = {1.0};
    CHECK(line.support(one) == 3.0);
    const auto cube = region_upper_bound(3, 2);
    const double w3[] = {0.5, 1.0, 2.0};
    CHECK(cube.support(w3) == 7.0);

    CHECK(optimality_threshold(1, 5, 3, ReceiverKind::mmse) == 2.0);
    CHECK(optimality_threshold(2, 4, 2, ReceiverKind::mmse) == 6.0);
    CHECK(optimality_threshold(2, 4, 2, ReceiverKind::mf) == 7.0);
    CHECK(optimality_threshold(2, 4, 3, ReceiverKind::as) == 7.0);
}

TEST_CASE("region properties under random weights")
{
    const auto weights = random_weights(100, 9);
    const double lo[] = {1.0, 2.0};
    const double hi[] = {1.5, 3.0};
    const auto r_lo = dof_region(lo, 4, 2, ReceiverKind::mmse);
    const auto r_hi = dof_region(hi, 4, 2, ReceiverKind::mmse);
    const auto r_mf = dof_region(lo, 4, 2, ReceiverKind::mf);
    for (const auto &w : weights) {
        CHECK(r_lo.support(w) <= r_hi.support(w) + 1e-12);
        CHECK(r_mf.support(w) <= r_lo.support(w) + 1e-12);
    }
    for (ReceiverKind kind : {ReceiverKind::mmse, ReceiverKind::mf}) {
        const double t = optimality_threshold(2, 4, 2, kind);
        const double sat[] = {t, t + 0.5};
        const auto r = dof_region(sat, 4, 2, kind);
        const auto box = region_upper_bound(2, 4);
        for (const auto &w : weights) {
            CHECK(r.support(w) == doctest::Approx(box.support(w)).epsilon(1e-12));
        }
    }
}

TEST_CASE("pareto front of a three-cell region")
{
    const double alpha[] = {1.0, 1.0, 1.0};
    const auto region = dof_region(alpha, 2, 1, ReceiverKind::mmse);
    CHECK(region.generators().size() == 27);
    const auto front = region.pareto_front();
    CHECK_FALSE(front.empty());
    for (const auto &p : front) {
        for (const auto &g : region.generators()) {
            const auto &q = g.point.d;
            const bool dominates = q[0] >= p.d[0] && q[1] >= p.d[1] && q[2] >= p.d[2] && q != p.d;
            CHECK_FALSE(dominates);
        }
    }
}

TEST_CASE("region csv export")
{
    const double alpha[] = {6.0, 6.0};
    const auto region = dof_region(alpha, 1, 1, ReceiverKind::mmse);
    std::ostringstream gens;
    write_region_csv(gens, region);
    CHECK(gens.str() == "m1,m2,d1,d2\n0,0,0,0\n0,1,0,1\n1,0,1,0\n1,1,1,1\n");
    std::ostringstream hull;
    write_hull_csv(hull, region);
    CHECK(hull.str() == "d1,d2\n0,0\n1,0\n1,1\n0,1\n");
}
