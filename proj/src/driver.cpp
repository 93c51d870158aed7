#include "bimcir/driver.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "bimcir/error.hpp"
#include "bimcir/format.hpp"

namespace bimcir {

namespace {

// Returns round(x) if x is within a relative 1e-9 of a positive integer.
bool integral_ratio(double num, double den, std::size_t& out) {
    const double r = num / den;
    if (!std::isfinite(r) || r < 0.5) return false;
    const double k = std::round(r);
    if (std::abs(r - k) > 1e-9 * k) return false;
    out = static_cast<std::size_t>(k);
    return true;
}

// Brownian increments live on a 2^-40 lattice. Sums of lattice values stay
// exact while partial sums are below 2^13 in magnitude, which makes
// aggregation exactly additive and associative.
double to_lattice(double x) { return std::ldexp(std::nearbyint(std::ldexp(x, 40)), -40); }

}  // namespace

GridSpec make_grid(double T, double h, double tau) {
    if (!(h > 0.0) || !(T > 0.0) || !std::isfinite(T) || !std::isfinite(h))
        throw Error(Errc::InvalidGrid, "T and h must be positive and finite");
    GridSpec g;
    g.T = T;
    g.h = h;
    if (!integral_ratio(T, h, g.steps)) {
        std::ostringstream os;
        os << "T/h = " << T / h << " is not an integer";
        throw Error(Errc::InvalidGrid, os.str());
    }
    if (!integral_ratio(tau, h, g.delay_steps)) {
        std::ostringstream os;
        os << "tau/h = " << tau / h << " is not a positive integer";
        throw Error(Errc::DelayMisaligned, os.str());
    }
    return g;
}

std::mt19937_64 make_engine(SeedPolicy seed) {
    const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed.master_seed), hi(seed.master_seed), lo(seed.path_index), hi(seed.path_index)};
    return std::mt19937_64(seq);
}

IncrementTable generate(const GridSpec& grid, double beta, SeedPolicy seed) {
    if (!(beta >= 0.0)) throw Error(Errc::NonPositiveParameter, "beta must be >= 0");
    IncrementTable t;
    t.grid = grid;
    t.beta = beta;
    t.dW.resize(grid.steps);
    t.dN.assign(grid.steps, 0);

    auto rng = make_engine(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(grid.h));
    const double mean_jumps = beta * grid.h;
    // std::poisson_distribution requires a strictly positive mean.
    if (mean_jumps > 0.0) {
        std::poisson_distribution<std::uint32_t> poisson(mean_jumps);
        for (std::size_t n = 0; n < grid.steps; ++n) {
            t.dW[n] = to_lattice(normal(rng));
            t.dN[n] = poisson(rng);
        }
    } else {
        for (std::size_t n = 0; n < grid.steps; ++n) t.dW[n] = to_lattice(normal(rng));
    }
    return t;
}

IncrementTable aggregate(const IncrementTable& fine, std::size_t factor) {
    if (factor == 0 || fine.grid.steps % factor != 0) {
        std::ostringstream os;
        os << "factor " << factor << " does not divide " << fine.grid.steps << " steps";
        throw Error(Errc::NonDivisibleFactor, os.str());
    }
    if (fine.grid.delay_steps % factor != 0) {
        std::ostringstream os;
        os << "factor " << factor << " does not divide delay offset m=" << fine.grid.delay_steps;
        throw Error(Errc::DelayMisaligned, os.str());
    }

    IncrementTable c;
    c.grid.T = fine.grid.T;
    c.grid.h = fine.grid.h * static_cast<double>(factor);
    c.grid.steps = fine.grid.steps / factor;
    c.grid.delay_steps = fine.grid.delay_steps / factor;
    c.beta = fine.beta;
    c.dW.assign(c.grid.steps, 0.0);
    c.dN.assign(c.grid.steps, 0);
    for (std::size_t k = 0; k < c.grid.steps; ++k) {
        double w = 0.0;
        std::uint32_t jumps = 0;
        for (std::size_t j = k * factor; j < (k + 1) * factor; ++j) {
            w += fine.dW[j];
            jumps += fine.dN[j];
        }
        c.dW[k] = w;
        c.dN[k] = jumps;
    }
    return c;
}

void write_csv(std::ostream& os, const IncrementTable& table) {
    os << "step,dW,dN\n";
    for (std::size_t n = 0; n < table.grid.steps; ++n)
        os << n << ',' << format_double(table.dW[n]) << ',' << table.dN[n] << '\n';
}

}  // namespace bimcir
