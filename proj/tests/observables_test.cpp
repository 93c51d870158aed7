#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bimcir/observables.hpp"

using namespace bimcir;

namespace {

ModelParams example1() { return {5.0, 0.5, 1.5, 0.5, 1.0, 2.0, 1.0}; }

PathRecorder constant_path(const GridSpec& grid, double level) {
    PathRecorder p;
    p.grid = grid;
    p.values.assign(grid.steps + 1, level);
    return p;
}

PathRecorder random_path(const GridSpec& grid, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 3.0);
    PathRecorder p;
    p.grid = grid;
    for (std::size_t n = 0; n <= grid.steps; ++n) p.values.push_back(u(rng));
    return p;
}

}  // namespace

TEST(StepProcess, NodeIdentityAndCells) {
    const auto grid = make_grid(10.0, 0.1, 1.0);
    std::mt19937_64 rng(1);
    const auto path = random_path(grid, rng);
    const auto history = InitialHistory::constant(1.0);
    const StepProcessView view(path, history, 1.0);
    for (std::size_t n = 0; n <= grid.steps; ++n) {
        ASSERT_EQ(step_process_at(view, grid.time(n)), path.values[n]) << n;
        ASSERT_EQ(step_process_at(view, static_cast<double>(n) * grid.h), path.values[n]) << n;
        if (n < grid.steps) ASSERT_EQ(step_process_at(view, (n + 0.5) * grid.h), path.values[n]);
    }
    EXPECT_EQ(view.at(-0.3), 1.0);
    EXPECT_EQ(view.at(-1.0), 1.0);
}

TEST(StepProcess, OutOfRange) {
    const auto grid = make_grid(1.0, 0.1, 1.0);
    const auto path = constant_path(grid, 1.0);
    const auto history = InitialHistory::constant(1.0);
    const StepProcessView view(path, history, 1.0);
    try {
        view.at(1.01);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::OutOfRange);
    }
    EXPECT_THROW(view.at(-1.01), Error);
}

TEST(StepProcess, SupOverDenseSampleEqualsGridMax) {
    const auto grid = make_grid(5.0, 0.25, 1.0);
    std::mt19937_64 rng(2);
    const auto history = InitialHistory::constant(1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto path = random_path(grid, rng);
        const StepProcessView view(path, history, 1.0);
        double sup = 0.0;
        for (int k = 0; k <= 100000; ++k) sup = std::max(sup, std::abs(view.at(grid.T * k / 100000.0)));
        const double grid_max = *std::max_element(path.values.begin(), path.values.end());
        EXPECT_EQ(sup, grid_max);
    }
}

TEST(Moments, ConstantEnsemble) {
    const auto grid = make_grid(1.0, 0.1, 1.0);
    const std::vector<PathRecorder> paths(5, constant_path(grid, 0.5));
    const double ps[] = {3.0};
    const auto r = moment_report(paths, ps);
    for (std::size_t n = 0; n <= grid.steps; ++n) {
        EXPECT_EQ(r.mean[n], 0.5);
        EXPECT_EQ(r.second_moment[n], 0.25);
        EXPECT_EQ(r.mean_std_error[n], 0.0);
        EXPECT_DOUBLE_EQ(r.p_moments.at(3.0)[n], 0.125);
    }
    EXPECT_EQ(r.n_paths, 5u);
}

TEST(Moments, TwoPaths) {
    const auto grid = make_grid(1.0, 0.5, 1.0);
    const std::vector<PathRecorder> paths{constant_path(grid, 0.0), constant_path(grid, 2.0)};
    const auto r = moment_report(paths);
    EXPECT_EQ(r.mean[0], 1.0);
    EXPECT_EQ(r.second_moment[0], 2.0);
    EXPECT_DOUBLE_EQ(r.mean_std_error[0], 1.0);  // sd sqrt(2) over sqrt(2)
}

TEST(Moments, SecondMomentDominatesSquaredMean) {
    const auto grid = make_grid(2.0, 0.1, 1.0);
    std::mt19937_64 rng(3);
    std::vector<PathRecorder> paths;
    for (int i = 0; i < 30; ++i) paths.push_back(random_path(grid, rng));
    const auto r = moment_report(paths);
    for (std::size_t n = 0; n < r.mean.size(); ++n)
        EXPECT_GE(r.second_moment[n] * (1 + 1e-12), r.mean[n] * r.mean[n]);
}

TEST(Moments, Errors) {
    const auto grid = make_grid(1.0, 0.1, 1.0);
    const std::vector<PathRecorder> one(1, constant_path(grid, 1.0));
    EXPECT_THROW(moment_report(one), Error);
    const std::vector<PathRecorder> mixed{constant_path(grid, 1.0), constant_path(make_grid(1.0, 0.5, 1.0), 1.0)};
    try {
        moment_report(mixed);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::GridMismatch);
    }
}

TEST(MeanBound, Values) {
    const auto p = example1();
    EXPECT_EQ(mean_bound(p, 0.1, 1.0, 0), 1.0);
    EXPECT_DOUBLE_EQ(mean_bound(p, 0.1, 1.0, 1), 0.75);
    EXPECT_NEAR(mean_bound(p, 0.1, 1.0, 200), 0.5, 1e-15);
    auto q = p;
    q.lambda = 100.0;
    q.mu = 5.0;
    EXPECT_EQ(mean_bound(q, 0.1, 7.0, 0), 7.0);
    EXPECT_FALSE(mean_bound_curve(q, 0.1, 1.0, 10).applicable);
    EXPECT_TRUE(mean_bound_curve(p, 0.1, 1.0, 10).applicable);
}

TEST(Bond, Identities) {
    const auto grid = make_grid(1.0, 0.5, 1.0);
    const std::vector<PathRecorder> zeros(3, constant_path(grid, 0.0));
    EXPECT_EQ(bond_price(zeros, 1.0).value, 1.0);

    const auto fine = make_grid(2.0, 0.1, 1.0);
    const std::vector<PathRecorder> flat{constant_path(fine, 0.5)};
    EXPECT_NEAR(bond_price(flat, 2.0).value, std::exp(-1.0), 1e-15);

    PathRecorder p = constant_path(grid, 0.0);
    p.values = {1.0, 0.5, 7.0};  // s_2 does not enter the integral over [0, 1]
    const std::vector<PathRecorder> hand{p};
    EXPECT_NEAR(bond_price(hand, 1.0).value, 0.47236655274101470714, 1e-15);
    EXPECT_THROW(bond_price(hand, 0.7), Error);
}

TEST(Bond, AntitoneAndInUnitInterval) {
    const auto grid = make_grid(1.0, 0.1, 1.0);
    std::mt19937_64 rng(4);
    std::vector<PathRecorder> paths;
    for (int i = 0; i < 20; ++i) paths.push_back(random_path(grid, rng));
    const double base = bond_price(paths, 1.0).value;
    EXPECT_GT(base, 0.0);
    EXPECT_LE(base, 1.0);
    auto raised = paths;
    for (auto& p : raised)
        for (auto& v : p.values) v += 0.01;
    EXPECT_LE(bond_price(raised, 1.0).value, base);
}

TEST(Barrier, PayoffIdentities) {
    const auto grid = make_grid(1.0, 0.1, 1.0);
    const double K = 1.0, B = 2.0;
    const std::vector<PathRecorder> otm{constant_path(grid, 0.5)};
    EXPECT_EQ(barrier_option_price(otm, K, B, 1.0).value, 0.0);

    auto knocked = constant_path(grid, 1.8);
    knocked.values[4] = 2.0 + 1e-9;
    EXPECT_EQ(barrier_payoff(knocked, K, B, grid.steps), 0.0);

    const std::vector<PathRecorder> itm{constant_path(grid, (K + B) / 2)};
    EXPECT_EQ(barrier_option_price(itm, K, B, 1.0).value, (B - K) / 2);

    auto below = constant_path(grid, 1.8);
    below.values[2] = -1e-12;
    EXPECT_EQ(barrier_payoff(below, K, B, grid.steps), 0.0);
}

TEST(Barrier, PayoffBounded) {
    const auto grid = make_grid(1.0, 0.1, 1.0);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        const auto p = random_path(grid, rng);
        const double v = barrier_payoff(p, 0.7, 2.5, grid.steps);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 2.5 - 0.7);
    }
}

TEST(Barrier, RejectsBadBarrier) {
    const auto grid = make_grid(1.0, 0.1, 1.0);
    const std::vector<PathRecorder> paths{constant_path(grid, 0.5)};
    try {
        barrier_option_price(paths, 1.0, 1.0, 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::BadBarrier);
    }
    EXPECT_THROW(barrier_option_price(paths, -1.0, 1.0, 1.0), Error);
}
