#include "bimcir/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bimcir {

std::string_view to_string(Scheme scheme) {
    return scheme == Scheme::bim ? "bim" : "euler";
}

ValidationResult validate(const ControlConfig& ctrl, const ModelParams& params) {
    if (!(ctrl.c0 >= params.lambda))
        return ValidationResult::reject(Errc::InvalidControl, "c0 >= lambda");
    if (!(ctrl.c2 >= params.delta))
        return ValidationResult::reject(Errc::InvalidControl, "c2 >= delta");
    if (!(ctrl.epsilon > 0.0) || !std::isfinite(ctrl.epsilon))
        return ValidationResult::reject(Errc::InvalidControl, "epsilon > 0");
    return ValidationResult::accept();
}

double control_c1(double s_n, double s_delay, double sigma, double gamma, double epsilon) {
    if (s_n < 0.0 || s_delay < 0.0) throw Error(Errc::NegativeState, "control_c1 needs nonnegative states");
    const double scale = sigma * std::pow(s_delay, gamma);
    return s_n < epsilon ? scale / std::sqrt(epsilon) : scale / std::sqrt(s_n);
}

double bim_step(double s_n, double s_delay, double dW, double dN_tilde, const ModelParams& p,
                const ControlConfig& ctrl, double h) {
    if (s_n < 0.0 || s_delay < 0.0) throw Error(Errc::NegativeState, "bim_step needs nonnegative states");
    const double delayed = std::pow(s_delay, p.gamma);
    const double c1 = control_c1(s_n, s_delay, p.sigma, p.gamma, ctrl.epsilon);
    const double damping = ctrl.c0 * h + c1 * std::abs(dW) + ctrl.c2 * std::abs(dN_tilde);
    const double increment =
        p.lambda * (p.mu - s_n) * h + p.sigma * delayed * std::sqrt(s_n) * dW + p.delta * s_n * dN_tilde;
    return s_n + increment / (1.0 + damping);
}

double euler_step(double s_n, double s_delay, double dW, double dN_tilde, const ModelParams& p, double h) {
    const double delayed = std::pow(std::max(s_delay, 0.0), p.gamma);
    return s_n + p.lambda * (p.mu - s_n) * h + p.sigma * delayed * std::sqrt(std::max(s_n, 0.0)) * dW +
           p.delta * s_n * dN_tilde;
}

DelayBuffer::DelayBuffer(const InitialHistory& history, const GridSpec& grid, double tau)
    : ring_(grid.delay_steps + 1) {
    const std::size_t m = grid.delay_steps;
    for (std::size_t k = 0; k <= m; ++k) {
        // t_{k-m}; the last slot is t_0 = 0 exactly.
        const double t = -static_cast<double>(m - k) * grid.h;
        ring_[k] = history_at(history, t, tau);
    }
}

void DelayBuffer::push(double next) noexcept {
    ring_[head_] = next;
    head_ = (head_ + 1) % ring_.size();
}

bool PathRecorder::any_negative() const noexcept {
    return std::any_of(values.begin(), values.end(), [](double v) { return v < 0.0; });
}

PathRecorder simulate_path(Scheme scheme, const ModelParams& params, const ControlConfig& ctrl,
                           const GridSpec& grid, const IncrementTable& increments,
                           const InitialHistory& history) {
    if (!(increments.grid == grid)) throw Error(Errc::GridMismatch, "increment table grid differs from path grid");
    if (increments.dW.size() != grid.steps || increments.dN.size() != grid.steps)
        throw Error(Errc::GridMismatch, "increment table length differs from step count");
    if (grid.delay_steps == 0 ||
        std::abs(static_cast<double>(grid.delay_steps) * grid.h - params.tau) > 1e-9 * params.tau) {
        std::ostringstream os;
        os << "m*h = " << static_cast<double>(grid.delay_steps) * grid.h << " != tau = " << params.tau;
        throw Error(Errc::DelayMisaligned, os.str());
    }
    if (scheme == Scheme::bim) {
        if (auto v = validate(ctrl, params); !v) throw Error(Errc::InvalidControl, v.message);
    }

    PathRecorder rec;
    rec.grid = grid;
    rec.values.reserve(grid.steps + 1);

    DelayBuffer buffer(history, grid, params.tau);
    rec.values.push_back(buffer.current());

    for (std::size_t n = 0; n < grid.steps; ++n) {
        const double s = buffer.current();
        const double d = buffer.delayed();
        const double dW = increments.dW[n];
        const double dNt = increments.compensated(n);
        double next;
        if (scheme == Scheme::bim) {
            next = bim_step(s, d, dW, dNt, params, ctrl, grid.h);
            if (next < 0.0) {
                ++rec.negativity_events;
                ++rec.clamp_applied;
                if (s >= ctrl.epsilon) ++rec.clamps_above_epsilon;
                next = 0.0;
            }
        } else {
            next = euler_step(s, d, dW, dNt, params, grid.h);
            if (next < 0.0) ++rec.negativity_events;
        }
        rec.values.push_back(next);
        buffer.push(next);
    }
    return rec;
}

}  // namespace bimcir
