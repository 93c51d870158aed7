#include "bimcir/model.hpp"

#include <cmath>
#include <sstream>

namespace bimcir {

std::string_view to_string(Errc code) {
    switch (code) {
        case Errc::NonPositiveParameter: return "NonPositiveParameter";
        case Errc::NonPositiveHistory: return "NonPositiveHistory";
        case Errc::BadHistoryGrid: return "BadHistoryGrid";
        case Errc::OutOfHistoryRange: return "OutOfHistoryRange";
        case Errc::InvalidGrid: return "InvalidGrid";
        case Errc::NonDivisibleFactor: return "NonDivisibleFactor";
        case Errc::DelayMisaligned: return "DelayMisaligned";
        case Errc::GridMismatch: return "GridMismatch";
        case Errc::InvalidControl: return "InvalidControl";
        case Errc::NegativeState: return "NegativeState";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::TooFewPaths: return "TooFewPaths";
        case Errc::BadBarrier: return "BadBarrier";
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::UnknownKey: return "UnknownKey";
        case Errc::ConstraintViolation: return "ConstraintViolation";
    }
    return "Unknown";
}

namespace {

constexpr double kSnap = 1e-9;

bool near(double a, double b, double scale) { return std::abs(a - b) <= kSnap * scale; }

}  // namespace

InitialHistory InitialHistory::constant(double level) {
    InitialHistory h;
    h.kind_ = Kind::constant;
    h.value_ = level;
    return h;
}

InitialHistory InitialHistory::tabulated(std::vector<Node> table) {
    InitialHistory h;
    h.kind_ = Kind::tabulated;
    h.value_ = 0.0;
    h.table_ = std::move(table);
    return h;
}

ValidationResult validate(const ModelParams& p, const InitialHistory& history) {
    // `!(x > 0)` also rejects NaN.
    const std::pair<const char*, double> positive[] = {
        {"lambda", p.lambda}, {"mu", p.mu}, {"gamma", p.gamma}, {"tau", p.tau}};
    for (const auto& [name, v] : positive) {
        if (!(v > 0.0) || !std::isfinite(v))
            return ValidationResult::reject(Errc::NonPositiveParameter, std::string(name) + " must be > 0");
    }
    const std::pair<const char*, double> nonnegative[] = {{"sigma", p.sigma}, {"delta", p.delta}, {"beta", p.beta}};
    for (const auto& [name, v] : nonnegative) {
        if (!(v >= 0.0) || !std::isfinite(v))
            return ValidationResult::reject(Errc::NonPositiveParameter, std::string(name) + " must be >= 0");
    }

    if (history.kind() == InitialHistory::Kind::constant) {
        if (!(history.value() > 0.0) || !std::isfinite(history.value()))
            return ValidationResult::reject(Errc::NonPositiveHistory, "constant history level must be > 0");
        return ValidationResult::accept();
    }

    const auto& table = history.table();
    if (table.size() < 2)
        return ValidationResult::reject(Errc::BadHistoryGrid, "tabulated history needs at least two nodes");
    if (!near(table.front().first, -p.tau, p.tau))
        return ValidationResult::reject(Errc::BadHistoryGrid, "first table time must be -tau");
    if (!near(table.back().first, 0.0, p.tau))
        return ValidationResult::reject(Errc::BadHistoryGrid, "last table time must be 0");
    for (std::size_t i = 1; i < table.size(); ++i) {
        if (!(table[i].first > table[i - 1].first)) {
            std::ostringstream os;
            os << "table times must be strictly increasing (node " << i << ")";
            return ValidationResult::reject(Errc::BadHistoryGrid, os.str());
        }
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (!(table[i].second > 0.0) || !std::isfinite(table[i].second)) {
            std::ostringstream os;
            os << "history level at node " << i << " must be > 0";
            return ValidationResult::reject(Errc::NonPositiveHistory, os.str());
        }
    }
    return ValidationResult::accept();
}

double history_at(const InitialHistory& history, double t, double tau) {
    if (!(t >= -tau * (1.0 + kSnap)) || !(t <= tau * kSnap)) {
        std::ostringstream os;
        os << "t=" << t << " outside [-" << tau << ", 0]";
        throw Error(Errc::OutOfHistoryRange, os.str());
    }
    if (history.kind() == InitialHistory::Kind::constant) return history.value();

    const auto& table = history.table();
    // Greatest node time <= t, with snapping onto nodes.
    std::size_t idx = 0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i].first <= t || near(table[i].first, t, tau))
            idx = i;
        else
            break;
    }
    return table[idx].second;
}

}  // namespace bimcir
