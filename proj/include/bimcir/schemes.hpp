#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "bimcir/driver.hpp"
#include "bimcir/model.hpp"

namespace bimcir {

/// Constants of the positivity-enforcing control functions
///   C0 = c0 >= lambda,  C2 = c2 >= delta,
///   C1(s, d) = sigma d^gamma / sqrt(max(s, epsilon)).
struct ControlConfig {
    double c0 = 0.0;
    double c2 = 0.0;
    double epsilon = 1e-3;

    bool operator==(const ControlConfig&) const = default;
};

/// Rejects with InvalidControl unless c0 >= lambda, c2 >= delta, epsilon > 0.
ValidationResult validate(const ControlConfig& ctrl, const ModelParams& params);

enum class Scheme { bim, euler };

std::string_view to_string(Scheme scheme);

double control_c1(double s_n, double s_delay, double sigma, double gamma, double epsilon);

/// One balanced implicit step in closed form:
///
///   s' = s + [lambda (mu - s) h + sigma d^gamma sqrt(s) dW + delta s dN~] / (1 + C)
///   C  = c0 h + C1(s, d) |dW| + c2 |dN~|
///
/// The result is nonnegative whenever s >= epsilon and d >= 0. Throws
/// NegativeState if s or d is negative.
double bim_step(double s_n, double s_delay, double dW, double dN_tilde, const ModelParams& params,
                const ControlConfig& ctrl, double h);

/// Explicit Euler-Maruyama step. Negative states are allowed; the square
/// root and the delayed power both act on the positive part.
double euler_step(double s_n, double s_delay, double dW, double dN_tilde, const ModelParams& params,
                  double h);

/// Holds s_{n-m}, ..., s_n in a ring of m+1 slots, seeded with the history
/// values xi(t_{-m}), ..., xi(t_0).
class DelayBuffer {
public:
    DelayBuffer(const InitialHistory& history, const GridSpec& grid, double tau);

    /// s_{n-m} for the current step n.
    double delayed() const noexcept { return ring_[head_]; }
    /// s_n for the current step n.
    double current() const noexcept { return ring_[(head_ + ring_.size() - 1) % ring_.size()]; }
    /// Appends s_{n+1} and advances n.
    void push(double next) noexcept;

private:
    std::vector<double> ring_;
    std::size_t head_ = 0;  // slot of the oldest value
};

struct PathRecorder {
    GridSpec grid;
    std::vector<double> values;             // s_0 .. s_N
    std::size_t negativity_events = 0;      // steps whose raw output was negative
    std::size_t clamp_applied = 0;          // BIM outputs clamped to zero
    std::size_t clamps_above_epsilon = 0;   // clamps where the pre-step state was >= epsilon

    bool any_negative() const noexcept;
};

/// Runs n = 0..N-1. BIM outputs below zero are clamped to zero and counted
/// (possible only from a state below epsilon); Euler outputs are recorded
/// as they are. Throws GridMismatch, DelayMisaligned, InvalidControl.
PathRecorder simulate_path(Scheme scheme, const ModelParams& params, const ControlConfig& ctrl,
                           const GridSpec& grid, const IncrementTable& increments,
                           const InitialHistory& history);

}  // namespace bimcir
