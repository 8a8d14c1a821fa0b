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

#include "rbf/cli.hpp"

#include "rbf/acceptance.hpp"
#include "rbf/analytic_cdf.hpp"
#include "rbf/dof.hpp"
#include "rbf/network.hpp"
#include "rbf/scheduler.hpp"
#include "rbf/validation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace rbf {

namespace {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

ReceiverKind receiver_or_throw(const std::string &name)
{
    const auto kind = parse_receiver(name);
    if (!kind) {
        throw UsageError("unknown receiver '" + name + "' (expected mmse, mf or as)");
    }
    return *kind;
}

// Collects the files of one command and writes them with their manifest.
class OutputSet {
public:
    OutputSet(RunManifest manifest, std::ostream &console) : manifest_(std::move(manifest)), console_(console) {}

    void add_csv(const std::string &path, const std::string &body)
    {
        const std::string text = manifest_.csv_line() + "\n" + body;
        if (path == "-") {
            console_ << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            throw std::runtime_error("cannot open output file " + path);
        }
        f << text;
        files_.push_back(path);
    }

    void add_record(nlohmann::json record) { records_.push_back(std::move(record)); }

    // Sidecar manifest next to the first file; records also go to the console.
    void finish()
    {
        for (const auto &r : records_) {
            console_ << r.dump() << '\n';
        }
        if (files_.empty()) {
            return;
        }
        auto doc = manifest_.to_json();
        doc["outputs"] = files_;
        doc["records"] = records_;
        std::ofstream f(files_.front() + ".manifest.json", std::ios::binary);
        f << doc.dump(2) << '\n';
    }

private:
    RunManifest manifest_;
    std::ostream &console_;
    std::vector<std::string> files_;
    nlohmann::json records_ = nlohmann::json::array();
};

RunManifest make_manifest(const std::string &command, const nlohmann::json &config, std::uint64_t seed)
{
    RunManifest m;
    m.command = command;
    m.config_digest = config_digest(config);
    m.seed = seed;
    m.timestamp = utc_timestamp();
    return m;
}

struct CommonArgs {
    std::string config;
    std::string rx = "mmse";
    std::string out = "-";
    std::uint64_t seed = 1;
    int threads = 0;
};

// --- sinr-cdf --------------------------------------------------------------------

struct CdfArgs : CommonArgs {
    std::int64_t samples = 100000;
    int cell = 0;
    std::string grid;
};

int cmd_sinr_cdf(const CdfArgs &a, std::ostream &out)
{
    if (a.samples < 1000) {
        throw UsageError("--samples must be at least 1000");
    }
    nlohmann::json raw;
    const auto cfg = load_config_file(a.config, &raw);
    const auto kind = receiver_or_throw(a.rx);
    if (a.cell < 0 || a.cell >= cfg.num_cells() || cfg.beams(a.cell) < 1) {
        throw UsageError("--cell must name a transmitting cell");
    }
    const double eta = *derive_gains(cfg).per_beam_snr(a.cell);
    std::vector<double> grid;
    if (a.grid.empty()) {
        grid = log_grid(1e-3 * eta, 1e3 * eta, 400);
    } else {
        std::string text = a.grid;
        std::replace(text.begin(), text.end(), ':', ',');
        const auto spec = parse_value_list(text);
        if (spec.size() != 3 || !(spec[0] > 0.0) || !(spec[1] > spec[0]) || spec[2] < 2 ||
            spec[2] != std::floor(spec[2])) {
            throw UsageError("--grid expects lo:hi:points with 0 < lo < hi");
        }
        grid = log_grid(spec[0], spec[1], static_cast<int>(spec[2]));
    }

    auto samples = user_sinr_samples(cfg, kind, a.cell, 0, a.samples, RngStream(a.seed), SimulationOptions{a.threads});
    const auto empirical = EmpiricalCdf::from_unsorted(std::move(samples));

    CdfFunction analytic;
    std::string warning;
    try {
        analytic = sinr_cdf(kind, cfg, a.cell);
    } catch (const HypothesisViolated &e) {
        warning = e.what();
    }

    OutputSet outputs(make_manifest("sinr-cdf", raw, a.seed), out);
    std::ostringstream csv;
    csv << (analytic ? "s,F_empirical,F_analytic\n" : "s,F_empirical\n");
    for (double s : grid) {
        csv << num(s) << ',' << num(empirical(s));
        if (analytic) {
            csv << ',' << num(analytic(s));
        }
        csv << '\n';
    }
    outputs.add_csv(a.out, csv.str());

    int code = exit_pass;
    if (analytic) {
        const auto ks = ks_distance(empirical, analytic);
        auto rec = to_json(ks);
        rec["record"] = "ks";
        rec["receiver"] = to_string(kind);
        outputs.add_record(rec);
        code = ks.pass ? exit_pass : exit_fail;
    } else {
        outputs.add_record({{"record", "warning"}, {"receiver", to_string(kind)}, {"message", warning}});
    }
    outputs.finish();
    return code;
}

// --- sumrate / sweep-m -------------------------------------------------------------

struct RateArgs : CommonArgs {
    std::string rho_db;
    std::optional<double> alpha;
    std::int64_t trials = 1000;
    std::string m_range;
};

int cmd_sumrate(const RateArgs &a, std::ostream &out)
{
    nlohmann::json raw;
    const auto base = load_config_file(a.config, &raw);
    const auto kind = receiver_or_throw(a.rx);
    const auto rhos = parse_value_list(a.rho_db);
    std::optional<UserScaling> scaling;
    if (a.alpha) {
        scaling = UserScaling::uniform(base.num_cells(), *a.alpha);
    }
    const RngStream rng(a.seed);
    std::ostringstream csv;
    csv << "rho_db,K,rate,stderr\n";
    for (double db : rhos) {
        const auto cfg = config_at_snr(base, db_to_linear(db), scaling ? &*scaling : nullptr);
        const auto est = estimate_sum_rate(cfg, kind, a.trials, rng, SimulationOptions{a.threads});
        csv << num(db) << ',' << cfg.users(0) << ',' << num(est.total_mean) << ',' << num(est.total_stderr) << '\n';
    }
    OutputSet outputs(make_manifest("sumrate", raw, a.seed), out);
    outputs.add_csv(a.out, csv.str());
    outputs.finish();
    return exit_pass;
}

int cmd_sweep_m(const RateArgs &a, std::ostream &out)
{
    nlohmann::json raw;
    const auto base = load_config_file(a.config, &raw);
    const auto kind = receiver_or_throw(a.rx);
    const auto rhos = parse_value_list(a.rho_db);
    const auto ms = a.m_range.empty() ? parse_int_range("1:" + std::to_string(base.num_tx_antennas))
                                      : parse_int_range(a.m_range);
    std::optional<UserScaling> scaling;
    if (a.alpha) {
        scaling = UserScaling::uniform(base.num_cells(), *a.alpha);
    }
    const RngStream rng(a.seed);
    std::ostringstream csv;
    csv << "rho_db,M,rate_total,stderr\n";
    for (double db : rhos) {
        std::vector<NetworkConfig> cfgs;
        for (int m : ms) {
            NetworkConfig c = base;
            for (auto &cell : c.cells) {
                cell.beams = m;
                cell.users = std::max(cell.users, m);
            }
            cfgs.push_back(config_at_snr(c, db_to_linear(db), scaling ? &*scaling : nullptr));
        }
        const auto sweep = estimate_sum_rate_sweep(cfgs, kind, a.trials, rng, SimulationOptions{a.threads});
        for (std::size_t i = 0; i < ms.size(); ++i) {
            csv << num(db) << ',' << ms[i] << ',' << num(sweep.points[i].total_mean) << ','
                << num(sweep.points[i].total_stderr) << '\n';
        }
    }
    OutputSet outputs(make_manifest("sweep-m", raw, a.seed), out);
    outputs.add_csv(a.out, csv.str());
    outputs.finish();
    return exit_pass;
}

// --- dof ---------------------------------------------------------------------------

struct DofArgs {
    std::string alpha;
    int nt = 4;
    int nr = 2;
    std::string rx = "mmse";
    std::string weights;
    std::string alpha_grid = "0:3:0.05";
    std::string out;
};

int cmd_dof(const DofArgs &a, std::ostream &out)
{
    const auto kind = receiver_or_throw(a.rx);
    const auto alpha = parse_value_list(a.alpha);
    const auto grid = parse_value_list(a.alpha_grid);
    if (a.nt < 1 || a.nr < 1) {
        throw UsageError("--nt and --nr must be positive");
    }
    const nlohmann::json params{{"alpha", alpha}, {"nt", a.nt}, {"nr", a.nr}, {"rx", a.rx}, {"alpha_grid", grid}};
    OutputSet outputs(make_manifest("dof", params, 0), out);

    std::ostringstream single;
    single << "alpha,d_star,m_star\n";
    for (double al : grid) {
        const auto opt = optimal_beams_single_cell(al, a.nt, a.nr, kind);
        single << num(al) << ',' << num(opt.dof) << ',' << opt.beams << '\n';
    }
    const auto region = dof_region(alpha, a.nt, a.nr, kind);
    std::ostringstream region_csv;
    write_region_csv(region_csv, region);

    outputs.add_csv(a.out + "_single.csv", single.str());
    outputs.add_csv(a.out + "_region.csv", region_csv.str());
    if (region.num_cells() == 2) {
        std::ostringstream hull;
        write_hull_csv(hull, region);
        outputs.add_csv(a.out + "_hull.csv", hull.str());
    }
    if (!a.weights.empty()) {
        const auto w = parse_value_list(a.weights);
        if (w.size() != alpha.size()) {
            throw UsageError("--weights needs one entry per cell");
        }
        for (double v : w) {
            if (v < 0.0) {
                throw UsageError("--weights must be nonnegative");
            }
        }
        outputs.add_record({{"record", "support"},
                            {"weights", w},
                            {"support", region.support(w)},
                            {"upper_bound", region_upper_bound(region.num_cells(), a.nt).support(w)}});
    }
    outputs.finish();
    return exit_pass;
}

// --- validate ------------------------------------------------------------------------

int cmd_validate(const std::string &suite, std::uint64_t seed, int threads, const std::string &report,
                 std::ostream &out)
{
    std::vector<int> ids;
    try {
        ids = suite_criteria(suite);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    AcceptanceOptions opts;
    opts.seed = seed;
    opts.sim.threads = threads;
    bool all = true;
    nlohmann::json records = nlohmann::json::array();
    for (int id : ids) {
        const auto r = run_criterion(id, opts);
        out << format_result(r) << std::endl;
        all = all && r.passed;
        records.push_back(to_json(r));
    }
    if (!report.empty()) {
        auto doc = make_manifest("validate", {{"suite", suite}}, seed).to_json();
        doc["records"] = records;
        std::ofstream f(report, std::ios::binary);
        f << doc.dump(2) << '\n';
    }
    return all ? exit_pass : exit_fail;
}

void add_common(CLI::App *sub, CommonArgs &a, bool needs_config)
{
    auto *opt = sub->add_option("--config", a.config, "Network config (JSON)");
    if (needs_config) {
        opt->required()->check(CLI::ExistingFile);
    }
    sub->add_option("--rx", a.rx, "Receiver: mmse, mf or as")->capture_default_str();
    sub->add_option("--seed", a.seed, "Random seed")->capture_default_str();
    sub->add_option("--out", a.out, "Output CSV path ('-' for stdout)")->capture_default_str();
    sub->add_option("--threads", a.threads, "Worker threads (0: RBF_THREADS or all cores)")->capture_default_str();
}

} // namespace

std::string RunManifest::csv_line() const
{
    return "# command=" + command + " digest=" + config_digest + " seed=" + std::to_string(seed) +
           " version=" + version;
}

nlohmann::json RunManifest::to_json() const
{
    return nlohmann::json{{"command", command},
                          {"config_digest", config_digest},
                          {"seed", seed},
                          {"version", version},
                          {"timestamp", timestamp}};
}

std::string config_digest(const nlohmann::json &doc)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : doc.dump()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<double> parse_value_list(std::string_view text)
{
    auto to_double = [](std::string_view s) {
        const std::string str(s);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(str, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != str.size() || !std::isfinite(v)) {
            throw UsageError("not a number: '" + str + "'");
        }
        return v;
    };
    if (text.empty()) {
        throw UsageError("empty value list");
    }
    std::vector<double> out;
    if (text.find(':') != std::string_view::npos) {
        std::vector<double> parts;
        std::size_t start = 0;
        while (true) {
            const auto pos = text.find(':', start);
            parts.push_back(to_double(text.substr(start, pos - start)));
            if (pos == std::string_view::npos) {
                break;
            }
            start = pos + 1;
        }
        if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
            throw UsageError("range must be a:b:step with a <= b and step > 0");
        }
        const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
        for (long i = 0; i <= count; ++i) {
            out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
        }
        return out;
    }
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(',', start);
        out.push_back(to_double(text.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

std::vector<int> parse_int_range(std::string_view text)
{
    auto to_int = [](std::string_view s) {
        const std::string str(s);
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(str, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != str.size()) {
            throw UsageError("not an integer: '" + str + "'");
        }
        return v;
    };
    const auto pos = text.find(':');
    const int lo = to_int(text.substr(0, pos));
    const int hi = pos == std::string_view::npos ? lo : to_int(text.substr(pos + 1));
    if (hi < lo) {
        throw UsageError("range a:b needs a <= b");
    }
    std::vector<int> out;
    for (int v = lo; v <= hi; ++v) {
        out.push_back(v);
    }
    return out;
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"rbflab: multi-cell MIMO random beamforming laboratory"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    CdfArgs cdf;
    auto *sub_cdf = app.add_subcommand("sinr-cdf", "Simulated vs closed-form SINR CDF of one cell");
    add_common(sub_cdf, cdf, true);
    sub_cdf->add_option("--samples", cdf.samples, "Monte Carlo samples (>= 1000)")->capture_default_str();
    sub_cdf->add_option("--cell", cdf.cell, "Observed cell")->capture_default_str();
    sub_cdf->add_option("--grid", cdf.grid, "lo:hi:points of the log grid (default 1e-3 eta .. 1e3 eta, 400)");

    RateArgs rate;
    auto *sub_rate = app.add_subcommand("sumrate", "Sum rate versus SNR");
    add_common(sub_rate, rate, true);
    sub_rate->add_option("--rho-db", rate.rho_db, "SNR list in dB (a:b:step or x,y,z)")->required();
    sub_rate->add_option("--alpha", rate.alpha, "User density exponent, K = floor(rho^alpha)");
    sub_rate->add_option("--trials", rate.trials, "Trials per point")->capture_default_str()->check(CLI::PositiveNumber);

    RateArgs sweep;
    auto *sub_sweep = app.add_subcommand("sweep-m", "Total sum rate versus common beam count");
    add_common(sub_sweep, sweep, true);
    sub_sweep->add_option("--rho-db", sweep.rho_db, "SNR list in dB (a:b:step or x,y,z)")->required();
    sub_sweep->add_option("--alpha", sweep.alpha, "User density exponent, K = floor(rho^alpha)");
    sub_sweep->add_option("--trials", sweep.trials, "Trials per point")->capture_default_str()->check(CLI::PositiveNumber);
    sub_sweep->add_option("--m-range", sweep.m_range, "Beam counts a:b (default 1:N_T)");

    DofArgs dof;
    auto *sub_dof = app.add_subcommand("dof", "Single-cell optimum curves and multi-cell DoF regions");
    sub_dof->add_option("--alpha", dof.alpha, "Per-cell user density exponents x,y,...")->required();
    sub_dof->add_option("--nt", dof.nt, "Transmit antennas")->capture_default_str();
    sub_dof->add_option("--nr", dof.nr, "Receive antennas")->capture_default_str();
    sub_dof->add_option("--rx", dof.rx, "Receiver: mmse, mf or as")->capture_default_str();
    sub_dof->add_option("--weights", dof.weights, "Weights for the support function x,y,...");
    sub_dof->add_option("--alpha-grid", dof.alpha_grid, "Single-cell alpha grid a:b:step")->capture_default_str();
    sub_dof->add_option("--out", dof.out, "Output prefix")->required();

    std::string suite = "all";
    std::string report;
    std::uint64_t vseed = AcceptanceOptions{}.seed;
    int vthreads = 0;
    auto *sub_val = app.add_subcommand("validate", "Run acceptance suites (cdf, scaling, sweep, dof, equivalence, all)");
    sub_val->add_option("suite", suite, "Suite name")->capture_default_str();
    sub_val->add_option("--seed", vseed, "Random seed")->capture_default_str();
    sub_val->add_option("--threads", vthreads, "Worker threads")->capture_default_str();
    sub_val->add_option("--out", report, "JSON report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_pass : exit_usage;
    }

    try {
        if (sub_cdf->parsed()) {
            return cmd_sinr_cdf(cdf, out);
        }
        if (sub_rate->parsed()) {
            return cmd_sumrate(rate, out);
        }
        if (sub_sweep->parsed()) {
            return cmd_sweep_m(sweep, out);
        }
        if (sub_dof->parsed()) {
            return cmd_dof(dof, out);
        }
        return cmd_validate(suite, vseed, vthreads, report, out);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return exit_fail;
    }
}

} // namespace rbf
