#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "bimcir/config.hpp"

namespace bimcir {

enum class Command { paths, converge, moments, bond, barrier };

std::optional<Command> parse_command(std::string_view name);

struct CommandResult {
    std::string csv;      // full file body including header
    std::string summary;  // one line, no trailing newline
};

/// Runs one command. The CSV body depends only on (command, config), never
/// on `threads`.
///
///   paths     t,path_0,...,path_{P-1}
///   converge  h,strong_error,std_error
///   moments   t,mean,second_moment,mean_bound   (bound empty when h >= 2/lambda)
///   bond      estimate,std_error,n_paths
///   barrier   estimate,std_error,n_paths
///
/// Throws ConfigError when the config lacks what the command needs, and
/// Error for runtime failures.
CommandResult run_command(Command command, const RunConfig& config, unsigned threads = 1);

}  // namespace bimcir
