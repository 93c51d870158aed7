#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bimcir/model.hpp"
#include "bimcir/observables.hpp"
#include "bimcir/schemes.hpp"

namespace bimcir {

/// Everything that defines one simulated model instance.
struct SimulationSetup {
    ModelParams params;
    InitialHistory history;
    ControlConfig control;
};

/// Calls body(i) for i in [0, count) on up to `threads` workers. Indices are
/// split into contiguous blocks; body must only write state owned by i.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

/// n_paths independent paths; path i uses SeedPolicy{master_seed, i}.
std::vector<PathRecorder> simulate_ensemble(const SimulationSetup& setup, Scheme scheme, const GridSpec& grid,
                                            std::size_t n_paths, std::uint64_t master_seed,
                                            unsigned threads = 1);

struct ConvergenceRow {
    double h = 0.0;
    double strong_error = 0.0;  // mean of |s_ref(T) - s_h(T)|^2
    double std_error = 0.0;
};

struct ConvergenceReport {
    double h_ref = 0.0;
    std::vector<ConvergenceRow> rows;
    double slope = 0.0;  // OLS slope of log e_h on log h over rows with e_h > 0; NaN if < 2 such rows
    std::size_t n_paths = 0;
};

/// Default coarse steps 2^{2i-1} h_ref, i = 1..5.
std::vector<double> default_h_list(double h_ref);

/// Least-squares slope of log(y) against log(x), skipping y <= 0.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Strong endpoint error of `scheme` against the same scheme run at h_ref,
/// with every coarse path driven by the aggregated reference increments.
/// Throws NonDivisibleFactor, DelayMisaligned, InvalidGrid.
ConvergenceReport convergence_study(const SimulationSetup& setup, Scheme scheme, double T, double h_ref,
                                    std::span<const double> h_list, std::size_t n_paths,
                                    std::uint64_t master_seed, unsigned threads = 1);

struct CensusEntry {
    Scheme scheme = Scheme::bim;
    std::size_t n_paths = 0;
    std::size_t paths_with_negative = 0;   // raw negatives (Euler) or pre-clamp negatives (BIM)
    std::size_t negative_events = 0;
    std::size_t clamp_events = 0;
    std::size_t clamps_above_epsilon = 0;
    std::size_t recorded_negative_values = 0;
};

struct PositivityCensus {
    std::vector<CensusEntry> entries;
};

/// Every scheme sees the same increments for a given path index.
PositivityCensus positivity_census(const SimulationSetup& setup, std::span<const Scheme> schemes, double h, double T,
                                   std::size_t n_paths, std::uint64_t master_seed, unsigned threads = 1);

struct MomentStudy {
    MomentReport report;
    MeanBoundCurve bound;  // bound.applicable is false when h >= 2 / lambda
};

MomentStudy moment_study(const SimulationSetup& setup, Scheme scheme, double h, double T, std::size_t n_paths,
                         std::uint64_t master_seed, std::span<const double> p_list = {},
                         unsigned threads = 1);

}  // namespace bimcir
