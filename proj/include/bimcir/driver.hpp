#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

namespace bimcir {

/// Uniform mesh t_n = n h on [0, T] with h = tau / m.
struct GridSpec {
    double T = 0.0;
    double h = 0.0;
    std::size_t steps = 0;        // N, with N h = T
    std::size_t delay_steps = 0;  // m, with m h = tau

    /// n h, with the right end pinned to T.
    double time(std::size_t n) const noexcept { return n == steps ? T : static_cast<double>(n) * h; }

    bool operator==(const GridSpec&) const = default;
};

/// Builds a grid, requiring T/h and tau/h to be integers up to a relative
/// 1e-9. Throws InvalidGrid or DelayMisaligned.
GridSpec make_grid(double T, double h, double tau);

/// Identifies one path's random stream.
///
/// The engine is std::mt19937_64 seeded through std::seed_seq with the four
/// 32-bit words (lo(master), hi(master), lo(path), hi(path)). Each step draws
/// dW first and then dN from that single engine.
struct SeedPolicy {
    std::uint64_t master_seed = 0;
    std::uint64_t path_index = 0;
};

std::mt19937_64 make_engine(SeedPolicy seed);

/// Per-step Brownian increments and Poisson counts on one grid.
struct IncrementTable {
    GridSpec grid;
    std::vector<double> dW;
    std::vector<std::uint32_t> dN;
    double beta = 0.0;

    /// dN_n - beta h.
    double compensated(std::size_t n) const noexcept {
        return static_cast<double>(dN[n]) - beta * grid.h;
    }
};

IncrementTable generate(const GridSpec& grid, double beta, SeedPolicy seed);

/// Sums blocks of `factor` consecutive fine increments. Throws
/// NonDivisibleFactor if factor does not divide the step count, and
/// DelayMisaligned if it does not divide the delay offset m.
IncrementTable aggregate(const IncrementTable& fine, std::size_t factor);

/// Debug dump with header `step,dW,dN`.
void write_csv(std::ostream& os, const IncrementTable& table);

}  // namespace bimcir
