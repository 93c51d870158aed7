#include "bimcir/observables.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bimcir {

namespace {

void require_common_grid(std::span<const PathRecorder> paths) {
    for (const auto& p : paths) {
        if (!(p.grid == paths.front().grid) || p.values.size() != p.grid.steps + 1)
            throw Error(Errc::GridMismatch, "paths do not share one grid");
    }
}

// Number of grid steps up to time T, which must be a node.
std::size_t steps_to(const GridSpec& grid, double T) {
    const double r = T / grid.h;
    const double k = std::round(r);
    if (!(T > 0.0) || std::abs(r - k) > 1e-9 * std::max(k, 1.0) || k > static_cast<double>(grid.steps)) {
        std::ostringstream os;
        os << "T=" << T << " is not a grid time in (0, " << grid.T << "]";
        throw Error(Errc::GridMismatch, os.str());
    }
    return static_cast<std::size_t>(k);
}

}  // namespace

std::size_t StepProcessView::cell(double t) const {
    const GridSpec& g = path_->grid;
    auto k = static_cast<std::size_t>(std::floor(t / g.h));
    // Division can land just below an integer for t = n*h; nudge up.
    if (static_cast<double>(k + 1) * g.h <= t) ++k;
    return std::min(k, g.steps);
}

double StepProcessView::at(double t) const {
    const GridSpec& g = path_->grid;
    if (!(t >= -tau_) || !(t <= g.T)) {
        std::ostringstream os;
        os << "t=" << t << " outside [-" << tau_ << ", " << g.T << "]";
        throw Error(Errc::OutOfRange, os.str());
    }
    if (t < 0.0) return history_at(*history_, t, tau_);
    if (t == g.T) return path_->values[g.steps];
    return path_->values[cell(t)];
}

double RunningStats::std_error() const noexcept {
    return count_ < 2 ? 0.0 : std::sqrt(variance() / static_cast<double>(count_));
}

MomentReport moment_report(std::span<const PathRecorder> paths, std::span<const double> p_list) {
    if (paths.size() < 2) throw Error(Errc::TooFewPaths, "moment_report needs at least two paths");
    require_common_grid(paths);

    const GridSpec& g = paths.front().grid;
    const std::size_t nodes = g.steps + 1;
    MomentReport r;
    r.n_paths = paths.size();
    r.times.resize(nodes);
    r.mean.resize(nodes);
    r.second_moment.resize(nodes);
    r.mean_std_error.resize(nodes);
    r.second_moment_std_error.resize(nodes);
    for (double p : p_list) r.p_moments[p].assign(nodes, 0.0);

    for (std::size_t n = 0; n < nodes; ++n) {
        r.times[n] = g.time(n);
        RunningStats first, second;
        std::vector<RunningStats> higher(r.p_moments.size());
        for (const auto& path : paths) {
            const double s = path.values[n];
            first.add(s);
            second.add(s * s);
            std::size_t i = 0;
            for (const auto& kv : r.p_moments) higher[i++].add(std::pow(std::abs(s), kv.first));
        }
        r.mean[n] = first.mean();
        r.second_moment[n] = second.mean();
        r.mean_std_error[n] = first.std_error();
        r.second_moment_std_error[n] = second.std_error();
        std::size_t i = 0;
        for (auto& kv : r.p_moments) kv.second[n] = higher[i++].mean();
    }
    return r;
}

double mean_bound(const ModelParams& params, double h, double xi0_mean, std::size_t n) {
    return std::pow(1.0 - params.lambda * h, static_cast<double>(n)) * (xi0_mean - params.mu) + params.mu;
}

MeanBoundCurve mean_bound_curve(const ModelParams& params, double h, double xi0_mean, std::size_t steps) {
    MeanBoundCurve c;
    c.applicable = h < 2.0 / params.lambda;
    c.values.resize(steps + 1);
    for (std::size_t n = 0; n <= steps; ++n) c.values[n] = mean_bound(params, h, xi0_mean, n);
    return c;
}

Estimate bond_price(std::span<const PathRecorder> paths, double T) {
    if (paths.empty()) throw Error(Errc::TooFewPaths, "bond_price needs at least one path");
    require_common_grid(paths);
    const GridSpec& g = paths.front().grid;
    const std::size_t steps = steps_to(g, T);

    RunningStats stats;
    for (const auto& path : paths) {
        double integral = 0.0;
        for (std::size_t n = 0; n < steps; ++n) integral += path.values[n];
        stats.add(std::exp(-g.h * integral));
    }
    return {stats.mean(), stats.std_error(), stats.count()};
}

double barrier_payoff(const PathRecorder& path, double strike, double barrier, std::size_t expiry_step) {
    for (std::size_t n = 0; n <= expiry_step; ++n) {
        const double s = path.values[n];
        if (s < 0.0 || s > barrier) return 0.0;
    }
    return std::max(path.values[expiry_step] - strike, 0.0);
}

Estimate barrier_option_price(std::span<const PathRecorder> paths, double strike, double barrier, double T) {
    if (!(strike >= 0.0)) throw Error(Errc::BadBarrier, "strike must be >= 0");
    if (!(barrier > strike)) throw Error(Errc::BadBarrier, "barrier must exceed strike");
    if (paths.empty()) throw Error(Errc::TooFewPaths, "barrier_option_price needs at least one path");
    require_common_grid(paths);
    const std::size_t expiry = steps_to(paths.front().grid, T);

    RunningStats stats;
    for (const auto& path : paths) stats.add(barrier_payoff(path, strike, barrier, expiry));
    return {stats.mean(), stats.std_error(), stats.count()};
}

}  // namespace bimcir
