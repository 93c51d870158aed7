#include "bimcir/app.hpp"

#include <algorithm>
#include <sstream>

#include "bimcir/experiments.hpp"
#include "bimcir/format.hpp"

namespace bimcir {

std::optional<Command> parse_command(std::string_view name) {
    if (name == "paths") return Command::paths;
    if (name == "converge") return Command::converge;
    if (name == "moments") return Command::moments;
    if (name == "bond") return Command::bond;
    if (name == "barrier") return Command::barrier;
    return std::nullopt;
}

namespace {

SimulationSetup setup_of(const RunConfig& c) { return {c.model, c.history, c.control}; }

CommandResult run_paths(const RunConfig& c, unsigned threads) {
    const auto grid = make_grid(c.T, c.h, c.model.tau);
    const auto paths = simulate_ensemble(setup_of(c), c.scheme, grid, c.n_paths, c.master_seed, threads);

    std::ostringstream os;
    os << 't';
    for (std::size_t i = 0; i < paths.size(); ++i) os << ",path_" << i;
    os << '\n';
    for (std::size_t n = 0; n <= grid.steps; ++n) {
        os << format_double(grid.time(n));
        for (const auto& p : paths) os << ',' << format_double(p.values[n]);
        os << '\n';
    }

    std::size_t negative = 0, clamps = 0;
    for (const auto& p : paths) {
        if (p.negativity_events > 0) ++negative;
        clamps += p.clamp_applied;
    }
    std::ostringstream summary;
    summary << to_string(c.scheme) << ": " << paths.size() << " paths, " << grid.steps << " steps, "
            << negative << " paths with negative values, " << clamps << " clamps";
    return {os.str(), summary.str()};
}

CommandResult run_converge(const RunConfig& c, unsigned threads) {
    const auto report =
        convergence_study(setup_of(c), c.scheme, c.T, c.h_ref, c.h_list, c.n_paths, c.master_seed, threads);
    std::ostringstream os;
    os << "h,strong_error,std_error\n";
    for (const auto& row : report.rows)
        os << format_double(row.h) << ',' << format_double(row.strong_error) << ',' << format_double(row.std_error)
           << '\n';
    std::ostringstream summary;
    summary << to_string(c.scheme) << ": fitted log-log slope " << report.slope << " over " << report.rows.size()
            << " step sizes, " << report.n_paths << " paths";
    return {os.str(), summary.str()};
}

CommandResult run_moments(const RunConfig& c, unsigned threads) {
    const auto study = moment_study(setup_of(c), c.scheme, c.h, c.T, c.n_paths, c.master_seed, c.p_list, threads);
    const auto& r = study.report;
    std::ostringstream os;
    os << "t,mean,second_moment,mean_bound\n";
    for (std::size_t n = 0; n < r.times.size(); ++n) {
        os << format_double(r.times[n]) << ',' << format_double(r.mean[n]) << ',' << format_double(r.second_moment[n])
           << ',';
        if (study.bound.applicable) os << format_double(study.bound.values[n]);
        os << '\n';
    }
    std::ostringstream summary;
    summary << to_string(c.scheme) << ": final mean " << r.mean.back() << ", max second moment "
            << *std::max_element(r.second_moment.begin(), r.second_moment.end());
    for (const auto& [p, values] : r.p_moments)
        summary << ", max E|s|^" << p << ' ' << *std::max_element(values.begin(), values.end());
    if (!study.bound.applicable) summary << " (mean bound inapplicable: h >= 2/lambda)";
    return {os.str(), summary.str()};
}

CommandResult estimate_result(const Estimate& e, std::string_view what) {
    std::ostringstream os;
    os << "estimate,std_error,n_paths\n"
       << format_double(e.value) << ',' << format_double(e.std_error) << ',' << e.n_paths << '\n';
    std::ostringstream summary;
    summary.precision(10);
    summary << what << ": " << e.value << " +/- " << e.std_error << " (" << e.n_paths << " paths)";
    return {os.str(), summary.str()};
}

CommandResult run_bond(const RunConfig& c, unsigned threads) {
    const auto grid = make_grid(c.T, c.h, c.model.tau);
    const auto paths = simulate_ensemble(setup_of(c), c.scheme, grid, c.n_paths, c.master_seed, threads);
    return estimate_result(bond_price(paths, c.T), "bond price");
}

CommandResult run_barrier(const RunConfig& c, unsigned threads) {
    if (!c.strike) throw ConfigError(Errc::ConstraintViolation, "K", "required by barrier");
    if (!c.barrier) throw ConfigError(Errc::ConstraintViolation, "B", "required by barrier");
    const auto grid = make_grid(c.T, c.h, c.model.tau);
    const auto paths = simulate_ensemble(setup_of(c), c.scheme, grid, c.n_paths, c.master_seed, threads);
    return estimate_result(barrier_option_price(paths, *c.strike, *c.barrier, c.T), "up-and-out call");
}

}  // namespace

CommandResult run_command(Command command, const RunConfig& config, unsigned threads) {
    validate_config(config);
    switch (command) {
        case Command::paths: return run_paths(config, threads);
        case Command::converge: return run_converge(config, threads);
        case Command::moments: return run_moments(config, threads);
        case Command::bond: return run_bond(config, threads);
        case Command::barrier: return run_barrier(config, threads);
    }
    throw Error(Errc::ConstraintViolation, "unknown command");
}

}  // namespace bimcir
