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

#include "rbf/dof.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rbf {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

// alpha M / (S - n) below the knee, M above it; S - n <= 0 means full DoF.
double capped_dof(double alpha, int beams, int total_beams, int n)
{
    if (beams == 0) {
        return 0.0;
    }
    const int knee = total_beams - n;
    if (knee <= 0 || alpha > knee) {
        return beams;
    }
    return alpha * beams / knee;
}

void check_alpha(double alpha)
{
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("alpha must be finite and >= 0");
    }
}

double cross(const std::vector<double> &o, const std::vector<double> &a, const std::vector<double> &b)
{
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::vector<DofPoint> monotone_chain(std::vector<std::vector<double>> pts)
{
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) {
        std::vector<DofPoint> out;
        for (auto &p : pts) {
            out.push_back(DofPoint{p});
        }
        return out;
    }
    std::vector<std::vector<double>> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto &p : pts) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0.0) {
            --k;
        }
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) {
            --k;
        }
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    std::vector<DofPoint> out;
    out.reserve(h.size());
    for (auto &p : h) {
        out.push_back(DofPoint{std::move(p)});
    }
    return out;
}

} // namespace

int effective_rx(ReceiverKind kind, int nr) { return kind == ReceiverKind::mmse ? nr : 1; }

double dof_single_cell(double alpha, int beams, int nr, ReceiverKind kind)
{
    check_alpha(alpha);
    if (beams < 1 || nr < 1) {
        throw std::invalid_argument("dof_single_cell: need M >= 1 and N_R >= 1");
    }
    return capped_dof(alpha, beams, beams, effective_rx(kind, nr));
}

OptimalBeams optimal_beams_single_cell(double alpha, int nt, int nr, ReceiverKind kind)
{
    check_alpha(alpha);
    if (nt < 1 || nr < 1) {
        throw std::invalid_argument("optimal_beams_single_cell: need N_T >= 1 and N_R >= 1");
    }
    const int n = effective_rx(kind, nr);
    if (alpha > nt - n) {
        return OptimalBeams{static_cast<double>(nt), nt};
    }
    const double fl = std::floor(alpha);
    const int low = static_cast<int>(fl) + n;
    // second candidate alpha (floor + n + 1) / (floor + 1) wins only when the
    // fractional part exceeds n / (floor + n + 1)
    const double high_dof = alpha * (fl + n + 1) / (fl + 1);
    if (high_dof > low) {
        return OptimalBeams{high_dof, low + 1};
    }
    return OptimalBeams{static_cast<double>(low), low};
}

OptimalBeams optimal_beams_brute_force(double alpha, int nt, int nr, ReceiverKind kind)
{
    OptimalBeams best{-1.0, 0};
    for (int m = 1; m <= nt; ++m) {
        const double d = dof_single_cell(alpha, m, nr, kind);
        if (d > best.dof) {
            best = OptimalBeams{d, m};
        }
    }
    return best;
}

DofPoint dof_multi_cell(const DofQuery &q)
{
    const std::size_t cells = q.beams.size();
    if (cells == 0 || q.alpha.size() != cells) {
        throw std::invalid_argument("dof_multi_cell: alpha and beams must have the same nonzero length");
    }
    if (q.num_tx_antennas < 1 || q.num_rx_antennas < 1) {
        throw std::invalid_argument("dof_multi_cell: need N_T >= 1 and N_R >= 1");
    }
    int total = 0;
    for (int m : q.beams) {
        if (m < 0 || m > q.num_tx_antennas) {
            throw std::invalid_argument("dof_multi_cell: beam count out of [0, N_T]");
        }
        total += m;
    }
    const int n = effective_rx(q.kind, q.num_rx_antennas);
    DofPoint p;
    p.d.resize(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        check_alpha(q.alpha[c]);
        p.d[c] = capped_dof(q.alpha[c], q.beams[c], total, n);
    }
    return p;
}

// --- regions ------------------------------------------------------------------

DofRegion::DofRegion(int cells, std::vector<Generator> generators) : cells_(cells), generators_(std::move(generators))
{
    if (cells_ < 1 || generators_.empty()) {
        throw std::invalid_argument("DofRegion: need at least one cell and one generator");
    }
    for (const auto &g : generators_) {
        if (g.point.d.size() != idx(cells_)) {
            throw std::invalid_argument("DofRegion: generator dimension mismatch");
        }
    }
    if (cells_ == 2) {
        std::vector<std::vector<double>> pts;
        pts.reserve(generators_.size());
        for (const auto &g : generators_) {
            pts.push_back(g.point.d);
        }
        hull_ = monotone_chain(std::move(pts));
    }
}

double DofRegion::support(std::span<const double> weights) const
{
    if (weights.size() != idx(cells_)) {
        throw std::invalid_argument("DofRegion::support: weight vector has wrong length");
    }
    double best = -std::numeric_limits<double>::infinity();
    for (const auto &g : generators_) {
        double v = 0.0;
        for (int c = 0; c < cells_; ++c) {
            v += weights[idx(c)] * g.point.d[idx(c)];
        }
        best = std::max(best, v);
    }
    return best;
}

const std::vector<DofPoint> &DofRegion::hull() const
{
    if (cells_ != 2) {
        throw std::logic_error("DofRegion::hull: vertex list is only available for two cells");
    }
    return hull_;
}

std::vector<DofPoint> DofRegion::pareto_front() const
{
    std::vector<DofPoint> out;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        const auto &a = generators_[i].point.d;
        bool dominated = false;
        for (std::size_t j = 0; j < generators_.size() && !dominated; ++j) {
            const auto &b = generators_[j].point.d;
            if (i == j || b == a) {
                // identical points keep the first copy only
                dominated = j < i && b == a;
                continue;
            }
            dominated = std::equal(a.begin(), a.end(), b.begin(), [](double x, double y) { return x <= y; });
        }
        if (!dominated) {
            out.push_back(generators_[i].point);
        }
    }
    return out;
}

DofRegion dof_region(std::span<const double> alpha, int nt, int nr, ReceiverKind kind)
{
    const int cells = static_cast<int>(alpha.size());
    if (cells < 1) {
        throw std::invalid_argument("dof_region: need at least one cell");
    }
    DofQuery q;
    q.alpha.assign(alpha.begin(), alpha.end());
    q.num_tx_antennas = nt;
    q.num_rx_antennas = nr;
    q.kind = kind;
    q.beams.assign(idx(cells), 0);

    std::vector<DofRegion::Generator> gens;
    // odometer over {0..N_T}^C, last cell fastest
    while (true) {
        gens.push_back(DofRegion::Generator{q.beams, dof_multi_cell(q)});
        int c = cells - 1;
        while (c >= 0 && q.beams[idx(c)] == nt) {
            q.beams[idx(c)] = 0;
            --c;
        }
        if (c < 0) {
            break;
        }
        ++q.beams[idx(c)];
    }
    return DofRegion(cells, std::move(gens));
}

DofRegion region_upper_bound(int cells, int nt)
{
    if (cells < 1 || nt < 1) {
        throw std::invalid_argument("region_upper_bound: need C >= 1 and N_T >= 1");
    }
    std::vector<DofRegion::Generator> gens;
    for (unsigned mask = 0; mask < (1u << cells); ++mask) {
        DofRegion::Generator g;
        g.beams.resize(idx(cells));
        g.point.d.resize(idx(cells));
        for (int c = 0; c < cells; ++c) {
            const bool on = (mask >> c) & 1u;
            g.beams[idx(c)] = on ? nt : 0;
            g.point.d[idx(c)] = on ? nt : 0.0;
        }
        gens.push_back(std::move(g));
    }
    return DofRegion(cells, std::move(gens));
}

double optimality_threshold(int cells, int nt, int nr, ReceiverKind kind)
{
    return static_cast<double>(cells * nt - effective_rx(kind, nr));
}

void write_region_csv(std::ostream &out, const DofRegion &region)
{
    const int cells = region.num_cells();
    for (int c = 0; c < cells; ++c) {
        out << 'm' << c + 1 << ',';
    }
    for (int c = 0; c < cells; ++c) {
        out << 'd' << c + 1 << (c + 1 < cells ? "," : "\n");
    }
    char buf[32];
    for (const auto &g : region.generators()) {
        for (int m : g.beams) {
            out << m << ',';
        }
        for (int c = 0; c < cells; ++c) {
            std::snprintf(buf, sizeof buf, "%.12g", g.point.d[idx(c)]);
            out << buf << (c + 1 < cells ? "," : "\n");
        }
    }
}

void write_hull_csv(std::ostream &out, const DofRegion &region)
{
    out << "d1,d2\n";
    char buf[64];
    for (const auto &v : region.hull()) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", v.d[0], v.d[1]);
        out << buf;
    }
}

} // namespace rbf
