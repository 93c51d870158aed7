#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bimcir/error.hpp"

namespace bimcir {

/// Coefficients of the delay CIR model with multiplicative compensated jumps
///
///   dS(t) = lambda (mu - S(t)) dt + sigma S(t - tau)^gamma sqrt(S(t)) dW(t)
///           + delta S(t) dN~(t),            N~(t) = N(t) - beta t
///   S(t)  = xi(t) on [-tau, 0].
struct ModelParams {
    double lambda = 0.0;  // mean-reversion speed
    double mu = 0.0;      // long-run level
    double sigma = 0.0;   // diffusion coefficient
    double gamma = 0.0;   // exponent on the delayed state
    double delta = 0.0;   // jump coefficient
    double beta = 0.0;    // Poisson intensity
    double tau = 0.0;     // delay length

    bool operator==(const ModelParams&) const = default;
};

/// Initial segment xi(t) on [-tau, 0]. Either a constant level or a table
/// of (time, level) nodes read as a right-open step function.
class InitialHistory {
public:
    enum class Kind { constant, tabulated };
    using Node = std::pair<double, double>;

    InitialHistory() = default;

    static InitialHistory constant(double level);
    static InitialHistory tabulated(std::vector<Node> table);

    Kind kind() const noexcept { return kind_; }
    double value() const noexcept { return value_; }
    const std::vector<Node>& table() const noexcept { return table_; }

    bool operator==(const InitialHistory&) const = default;

private:
    Kind kind_ = Kind::constant;
    double value_ = 1.0;
    std::vector<Node> table_;
};

struct ValidationResult {
    std::optional<Errc> error;
    std::string message;

    bool ok() const noexcept { return !error.has_value(); }
    explicit operator bool() const noexcept { return ok(); }

    static ValidationResult accept() { return {}; }
    static ValidationResult reject(Errc code, std::string why) { return {code, std::move(why)}; }
};

/// Checks the standing assumptions on the coefficients and the history.
/// The first violated constraint is reported; nothing is thrown.
ValidationResult validate(const ModelParams& params, const InitialHistory& history);

/// xi(t) for t in [-tau, 0]. Times within a relative 1e-9 of a table node
/// (or of the interval ends) snap to it, so grid times computed as n*h hit
/// the node they name.
double history_at(const InitialHistory& history, double t, double tau);

}  // namespace bimcir
