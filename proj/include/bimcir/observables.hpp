#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "bimcir/model.hpp"
#include "bimcir/schemes.hpp"

namespace bimcir {

/// Piecewise-constant interpolant of a simulated path: xi(t) on [-tau, 0),
/// s_n on [n h, (n+1) h), and s_N at t = T.
class StepProcessView {
public:
    StepProcessView(const PathRecorder& path, const InitialHistory& history, double tau)
        : path_(&path), history_(&history), tau_(tau) {}

    /// Throws OutOfRange outside [-tau, T].
    double at(double t) const;

    /// Index of the grid cell containing t in [0, T].
    std::size_t cell(double t) const;

    const PathRecorder& path() const noexcept { return *path_; }

private:
    const PathRecorder* path_;
    const InitialHistory* history_;
    double tau_;
};

inline double step_process_at(const StepProcessView& view, double t) { return view.at(t); }

/// Running mean/variance in a fixed order (Welford). A constant stream
/// yields its value and a zero variance exactly.
class RunningStats {
public:
    void add(double x) noexcept {
        ++count_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(count_);
        m2_ += d * (x - mean_);
    }
    std::size_t count() const noexcept { return count_; }
    double mean() const noexcept { return mean_; }
    /// Unbiased sample variance; 0 for fewer than two samples.
    double variance() const noexcept { return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1); }
    /// Standard error of the mean; 0 for fewer than two samples.
    double std_error() const noexcept;

private:
    std::size_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct MomentReport {
    std::vector<double> times;
    std::vector<double> mean;
    std::vector<double> second_moment;
    std::vector<double> mean_std_error;
    std::vector<double> second_moment_std_error;
    std::map<double, std::vector<double>> p_moments;  // p -> E|s_n|^p
    std::size_t n_paths = 0;
};

/// Pointwise sample moments across paths, accumulated in path order.
/// Throws GridMismatch, TooFewPaths (fewer than two paths).
MomentReport moment_report(std::span<const PathRecorder> paths, std::span<const double> p_list = {});

/// (1 - lambda h)^n (xi0_mean - mu) + mu.
double mean_bound(const ModelParams& params, double h, double xi0_mean, std::size_t n);

struct MeanBoundCurve {
    std::vector<double> values;  // indexed by step n
    bool applicable = true;      // false when h >= 2 / lambda
};

MeanBoundCurve mean_bound_curve(const ModelParams& params, double h, double xi0_mean, std::size_t steps);

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_paths = 0;
};

/// Mean of exp(-h sum_{n<T/h} s_n) across paths. T must be a grid time.
/// Throws GridMismatch.
Estimate bond_price(std::span<const PathRecorder> paths, double T);

/// Up-and-out call on the step process: payoff (s(T) - K)^+ unless some
/// monitored node t_0..T leaves [0, B]. Throws BadBarrier unless 0 <= K < B.
Estimate barrier_option_price(std::span<const PathRecorder> paths, double strike, double barrier, double T);

/// Per-path payoff used by barrier_option_price.
double barrier_payoff(const PathRecorder& path, double strike, double barrier, std::size_t expiry_step);

}  // namespace bimcir
