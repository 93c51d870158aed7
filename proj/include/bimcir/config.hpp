#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bimcir/error.hpp"
#include "bimcir/model.hpp"
#include "bimcir/schemes.hpp"

namespace bimcir {

/// Everything a CLI run needs. Parsed from flat `key = value` text:
///
///   # Example 1
///   lambda = 5
///   mu = 0.5
///   ...
///   h_list = 0.0009765625, 0.00390625
///   xi_table = -1:2, -0.5:3, 0:4
///
/// Required keys: lambda mu sigma gamma delta beta tau c0 c2.
struct RunConfig {
    ModelParams model;
    InitialHistory history = InitialHistory::constant(1.0);
    ControlConfig control;
    Scheme scheme = Scheme::bim;
    double T = 1.0;
    double h = 0.1;
    double h_ref = 1.0 / 2048.0;
    std::vector<double> h_list;  // filled with the 2^{2i-1} h_ref defaults when absent
    std::size_t n_paths = 10;
    std::uint64_t master_seed = 20240229;
    std::vector<double> p_list{1.0, 2.0};
    std::optional<double> strike;
    std::optional<double> barrier;
    std::string output;

    bool operator==(const RunConfig&) const = default;
};

/// Parse failure. `key` is empty for syntax errors; `line` is 1-based or 0.
class ConfigError : public Error {
public:
    ConfigError(Errc code, std::string key, std::string rule, std::size_t line = 0);

    const std::string& key() const noexcept { return key_; }
    const std::string& rule() const noexcept { return rule_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string key_;
    std::string rule_;
    std::size_t line_;
};

RunConfig parse_config(std::string_view text);

/// Inverse of parse_config: every field written explicitly.
std::string render_config(const RunConfig& config);

/// Re-checks every constraint parse_config enforces. Throws ConfigError.
void validate_config(const RunConfig& config);

}  // namespace bimcir
