// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#include "mabeam/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace mabeam {

std::string sweep_axis_name(SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::none: return "none";
    case SweepAxis::snr_db: return "snr";
    case SweepAxis::x_max_wavelengths: return "xmax";
    case SweepAxis::weight_comm: return "weight";
    }
    return "?";
}

SweepAxis sweep_axis_from_name(std::string_view name)
{
    if (name == "none") return SweepAxis::none;
    if (name == "snr") return SweepAxis::snr_db;
    if (name == "xmax") return SweepAxis::x_max_wavelengths;
    if (name == "weight") return SweepAxis::weight_comm;
    throw std::invalid_argument("unknown sweep axis: " + std::string(name));
}

std::vector<double> default_sweep_values(SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::none: return {0.0};
    case SweepAxis::snr_db: return {-20, -15, -10, -5, 0, 5, 10};
    case SweepAxis::x_max_wavelengths: return {6, 9, 12, 15, 18, 21};
    case SweepAxis::weight_comm: return {0.0, 0.25, 0.5, 0.75, 1.0};
    }
    return {0.0};
}

void ExperimentSpec::validate() const
{
    base.validate();
    if (schemes.empty())
        throw std::invalid_argument("experiment needs at least one scheme");
    if (sweep_values.empty())
        throw std::invalid_argument("sweep value list must not be empty");
    if (n_trials < 1)
        throw std::invalid_argument("n_trials must be >= 1");
    for (double v : sweep_values)
        apply_sweep(base, axis, v).validate();
}

SystemConfig apply_sweep(const SystemConfig& base, SweepAxis axis, double value)
{
    SystemConfig cfg = base;
    switch (axis) {
    case SweepAxis::none:
        break;
    case SweepAxis::snr_db:
        cfg.tx_power = db_to_linear(value) * cfg.noise_user;
        break;
    case SweepAxis::x_max_wavelengths:
        cfg.region_max = cfg.region_min + value * cfg.wavelength;
        break;
    case SweepAxis::weight_comm:
        cfg.weight_comm = value;
        cfg.weight_sense = 1.0 - value;
        break;
    }
    return cfg;
}

namespace {

struct Task {
    double sweep_value;
    Scheme scheme;
    int trial;
};

TrialRow run_task(const ExperimentSpec& spec, const Task& task)
{
    TrialRow row;
    row.sweep_value = task.sweep_value;
    row.scheme = task.scheme;
    row.trial = task.trial;
    row.seed = spec.base_seed + static_cast<std::uint64_t>(task.trial);
    try {
        const SystemConfig cfg = apply_sweep(spec.base, spec.axis, task.sweep_value);
        // scene depends only on (K, C, Lp, target policy, seed), so every
        // scheme and sweep point sees the identical realization per trial
        const Scene scene = sample_scene(cfg, row.seed);
        const SolveResult res = solve(scene, cfg, task.scheme, row.seed);
        row.ok = !res.flagged;
        if (res.flagged)
            row.error = "sub-problem aborted";
        row.objective_bits = res.metrics.objective_bits;
        row.sum_rate_bits = res.metrics.sum_rate_bits();
        row.mi_bits = res.metrics.mi_bits;
        row.scnr_db = linear_to_db(res.metrics.scnr);
        row.iters = res.iterations;
        row.wall_ms = res.wall_seconds * 1e3;
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
    }
    return row;
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

} // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec)
{
    spec.validate();

    std::vector<Task> tasks;
    tasks.reserve(spec.sweep_values.size() * spec.schemes.size() *
                  static_cast<std::size_t>(spec.n_trials));
    for (double v : spec.sweep_values)
        for (Scheme s : spec.schemes)
            for (int t = 0; t < spec.n_trials; ++t)
                tasks.push_back({v, s, t});

    ExperimentResult result;
    result.rows.resize(tasks.size());

    unsigned workers = spec.workers > 0
                           ? static_cast<unsigned>(spec.workers)
                           : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(tasks.size()));

    std::atomic<std::size_t> cursor{0};
    auto drain = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= tasks.size())
                return;
            result.rows[i] = run_task(spec, tasks[i]);
        }
    };

    if (workers <= 1) {
        drain();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(drain);
        for (auto& th : pool)
            th.join();
    }
    return result;
}

void write_results_csv(const ExperimentResult& result, std::ostream& out)
{
    out << "sweep_value,scheme,trial,seed,status,objective_bits,sum_rate_bits,"
           "mi_bits,scnr_db,iters,wall_ms\n";
    for (const auto& r : result.rows) {
        out << fmt(r.sweep_value) << ',' << scheme_name(r.scheme) << ','
            << r.trial << ',' << r.seed << ',' << (r.ok ? "ok" : "failed")
            << ',';
        if (r.ok)
            out << fmt(r.objective_bits) << ',' << fmt(r.sum_rate_bits) << ','
                << fmt(r.mi_bits) << ',' << fmt(r.scnr_db) << ',' << r.iters;
        else
            out << ",,,," << r.iters;
        out << ',' << fmt(r.wall_ms) << '\n';
    }
}

void write_aggregate_csv(const ExperimentResult& result, std::ostream& out)
{
    struct Cell {
        int n_ok = 0;
        int n_failed = 0;
        double obj = 0, obj2 = 0;
        double rate = 0, rate2 = 0;
        double mi = 0, mi2 = 0;
    };
    std::map<std::pair<double, std::string>, Cell> cells;
    for (const auto& r : result.rows) {
        Cell& c = cells[{r.sweep_value, scheme_name(r.scheme)}];
        if (!r.ok) {
            ++c.n_failed;
            continue;
        }
        ++c.n_ok;
        c.obj += r.objective_bits;
        c.obj2 += r.objective_bits * r.objective_bits;
        c.rate += r.sum_rate_bits;
        c.rate2 += r.sum_rate_bits * r.sum_rate_bits;
        c.mi += r.mi_bits;
        c.mi2 += r.mi_bits * r.mi_bits;
    }

    auto std_of = [](double sum, double sum2, int n) {
        if (n < 2)
            return 0.0;
        const double mean = sum / n;
        return std::sqrt(std::max(0.0, (sum2 - n * mean * mean) / (n - 1)));
    };

    out << "sweep_value,scheme,n_ok,n_failed,objective_bits_mean,"
           "objective_bits_std,sum_rate_bits_mean,sum_rate_bits_std,"
           "mi_bits_mean,mi_bits_std\n";
    for (const auto& [key, c] : cells) {
        const int n = c.n_ok;
        out << fmt(key.first) << ',' << key.second << ',' << n << ','
            << c.n_failed << ',' << fmt(n ? c.obj / n : 0.0) << ','
            << fmt(std_of(c.obj, c.obj2, n)) << ',' << fmt(n ? c.rate / n : 0.0)
            << ',' << fmt(std_of(c.rate, c.rate2, n)) << ','
            << fmt(n ? c.mi / n : 0.0) << ',' << fmt(std_of(c.mi, c.mi2, n))
            << '\n';
    }
}

ExperimentResult run_experiment_to_files(const ExperimentSpec& spec)
{
    ExperimentResult result = run_experiment(spec);
    {
        std::ofstream out(spec.out_path);
        if (!out)
            throw std::runtime_error("cannot open output file: " + spec.out_path);
        write_results_csv(result, out);
        if (!out.good())
            throw std::runtime_error("write failed: " + spec.out_path);
    }
    {
        const std::string agg_path = spec.out_path + ".agg.csv";
        std::ofstream out(agg_path);
        if (!out)
            throw std::runtime_error("cannot open output file: " + agg_path);
        write_aggregate_csv(result, out);
        if (!out.good())
            throw std::runtime_error("write failed: " + agg_path);
    }
    return result;
}

RVector degree_grid(double start_deg, double stop_deg, double step_deg)
{
    if (!(step_deg > 0.0) || stop_deg < start_deg)
        throw std::invalid_argument("degree_grid: bad range");
    const int n = static_cast<int>(std::floor((stop_deg - start_deg) / step_deg +
                                              1e-9)) +
                  1;
    RVector grid(n);
    for (int i = 0; i < n; ++i)
        grid[i] = start_deg + i * step_deg;
    return grid;
}

void emit_beampattern(std::ostream& out, const std::string& label,
                      const AntennaPositions& x, const Beamformer& F,
                      double wavelength, const RVector& grid_deg)
{
    for (Eigen::Index i = 0; i < grid_deg.size(); ++i) {
        const CVector a = steering_vector(x, deg_to_rad(grid_deg[i]), wavelength);
        out << label << ',' << fmt(grid_deg[i]) << ','
            << fmt((F.adjoint() * a).squaredNorm()) << '\n';
    }
}

void emit_crb_sweep(std::ostream& out, const std::string& label,
                    const Scene& scene, const AntennaPositions& x,
                    const SystemConfig& cfg, const RVector& grid_deg)
{
    // isotropic transmit covariance F F^H = P0/N I isolates the array
    // geometry from any particular beamforming solution
    const Eigen::Index n = x.size();
    Beamformer F = std::sqrt(cfg.tx_power / static_cast<double>(n)) *
                   CMatrix::Identity(n, n);
    Scene probe = scene;
    for (Eigen::Index i = 0; i < grid_deg.size(); ++i) {
        probe.target_angle = deg_to_rad(grid_deg[i]);
        double value = std::nan("");
        try {
            value = crb_theta(fim(probe, x, F, cfg));
        } catch (const singular_fim_error&) {
            // leave nan: angle unobservable for this geometry
        }
        out << label << ',' << fmt(grid_deg[i]) << ',' << fmt(value) << '\n';
    }
}

} // namespace mabeam
