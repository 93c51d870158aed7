#include "bimcir/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "bimcir/driver.hpp"

namespace bimcir {

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t block = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * block;
        const std::size_t end = std::min(count, begin + block);
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

namespace {

void require_valid(const SimulationSetup& setup) {
    if (auto v = validate(setup.params, setup.history); !v) throw Error(*v.error, v.message);
}

}  // namespace

std::vector<PathRecorder> simulate_ensemble(const SimulationSetup& setup, Scheme scheme, const GridSpec& grid,
                                            std::size_t n_paths, std::uint64_t master_seed, unsigned threads) {
    require_valid(setup);
    std::vector<PathRecorder> paths(n_paths);
    parallel_for(n_paths, threads, [&](std::size_t i) {
        const auto inc = generate(grid, setup.params.beta, {master_seed, i});
        paths[i] = simulate_path(scheme, setup.params, setup.control, grid, inc, setup.history);
    });
    return paths;
}

std::vector<double> default_h_list(double h_ref) {
    std::vector<double> hs;
    for (int i = 1; i <= 5; ++i) hs.push_back(std::ldexp(h_ref, 2 * i - 1));
    return hs;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
        if (y[i] > 0.0 && x[i] > 0.0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    const double n = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

ConvergenceReport convergence_study(const SimulationSetup& setup, Scheme scheme, double T, double h_ref,
                                    std::span<const double> h_list, std::size_t n_paths,
                                    std::uint64_t master_seed, unsigned threads) {
    require_valid(setup);
    const GridSpec ref_grid = make_grid(T, h_ref, setup.params.tau);

    std::vector<std::size_t> factors;
    std::vector<GridSpec> grids;
    for (double h : h_list) {
        const double r = h / h_ref;
        const double k = std::round(r);
        if (!(k >= 1.0) || std::abs(r - k) > 1e-9 * k) {
            std::ostringstream os;
            os << "h=" << h << " is not an integer multiple of h_ref=" << h_ref;
            throw Error(Errc::NonDivisibleFactor, os.str());
        }
        const auto factor = static_cast<std::size_t>(k);
        if (ref_grid.steps % factor != 0) {
            std::ostringstream os;
            os << "h=" << h << " does not divide T=" << T;
            throw Error(Errc::NonDivisibleFactor, os.str());
        }
        if (ref_grid.delay_steps % factor != 0) {
            std::ostringstream os;
            os << "h=" << h << " does not divide tau=" << setup.params.tau;
            throw Error(Errc::DelayMisaligned, os.str());
        }
        factors.push_back(factor);
    }

    // gaps[i * nh + j] = squared endpoint gap of path i at h_list[j].
    const std::size_t nh = factors.size();
    std::vector<double> gaps(n_paths * nh);
    parallel_for(n_paths, threads, [&](std::size_t i) {
        const auto fine = generate(ref_grid, setup.params.beta, {master_seed, i});
        const auto ref = simulate_path(scheme, setup.params, setup.control, ref_grid, fine, setup.history);
        const double ref_end = ref.values.back();
        for (std::size_t j = 0; j < nh; ++j) {
            const auto coarse = aggregate(fine, factors[j]);
            const auto path = simulate_path(scheme, setup.params, setup.control, coarse.grid, coarse, setup.history);
            const double gap = ref_end - path.values.back();
            gaps[i * nh + j] = gap * gap;
        }
    });

    ConvergenceReport report;
    report.h_ref = h_ref;
    report.n_paths = n_paths;
    std::vector<double> hs, errs;
    for (std::size_t j = 0; j < nh; ++j) {
        RunningStats stats;
        for (std::size_t i = 0; i < n_paths; ++i) stats.add(gaps[i * nh + j]);
        // Exact multiple of h_ref, so the reported step is the one simulated.
        const double h = h_ref * static_cast<double>(factors[j]);
        report.rows.push_back({h, stats.mean(), stats.std_error()});
        hs.push_back(h);
        errs.push_back(stats.mean());
    }
    report.slope = loglog_slope(hs, errs);
    return report;
}

PositivityCensus positivity_census(const SimulationSetup& setup, std::span<const Scheme> schemes, double h, double T,
                                   std::size_t n_paths, std::uint64_t master_seed, unsigned threads) {
    require_valid(setup);
    const GridSpec grid = make_grid(T, h, setup.params.tau);
    const std::size_t ns = schemes.size();

    std::vector<PathRecorder> paths(n_paths * ns);
    parallel_for(n_paths, threads, [&](std::size_t i) {
        const auto inc = generate(grid, setup.params.beta, {master_seed, i});
        for (std::size_t k = 0; k < ns; ++k)
            paths[i * ns + k] = simulate_path(schemes[k], setup.params, setup.control, grid, inc, setup.history);
    });

    PositivityCensus census;
    for (std::size_t k = 0; k < ns; ++k) {
        CensusEntry e;
        e.scheme = schemes[k];
        e.n_paths = n_paths;
        for (std::size_t i = 0; i < n_paths; ++i) {
            const auto& p = paths[i * ns + k];
            if (p.negativity_events > 0) ++e.paths_with_negative;
            e.negative_events += p.negativity_events;
            e.clamp_events += p.clamp_applied;
            e.clamps_above_epsilon += p.clamps_above_epsilon;
            e.recorded_negative_values += static_cast<std::size_t>(
                std::count_if(p.values.begin(), p.values.end(), [](double v) { return v < 0.0; }));
        }
        census.entries.push_back(e);
    }
    return census;
}

MomentStudy moment_study(const SimulationSetup& setup, Scheme scheme, double h, double T, std::size_t n_paths,
                         std::uint64_t master_seed, std::span<const double> p_list, unsigned threads) {
    const GridSpec grid = make_grid(T, h, setup.params.tau);
    const auto paths = simulate_ensemble(setup, scheme, grid, n_paths, master_seed, threads);
    MomentStudy study;
    study.report = moment_report(paths, p_list);
    const double xi0 = history_at(setup.history, 0.0, setup.params.tau);
    study.bound = mean_bound_curve(setup.params, h, xi0, grid.steps);
    return study;
}

}  // namespace bimcir
