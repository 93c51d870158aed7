#include "bimcir/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "bimcir/experiments.hpp"
#include "bimcir/format.hpp"

namespace bimcir {

ConfigError::ConfigError(Errc code, std::string key, std::string rule, std::size_t line)
    : Error(code, [&] {
          std::ostringstream os;
          if (line != 0) os << "line " << line << ": ";
          if (!key.empty()) os << key << ": ";
          os << rule;
          return os.str();
      }()),
      key_(std::move(key)),
      rule_(std::move(rule)),
      line_(line) {}

namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "lambda", "mu",     "sigma",  "gamma",   "delta",       "beta",   "tau", "c0", "c2", "epsilon",
    "xi",     "xi_table", "scheme", "T",     "h",           "h_ref",  "h_list", "n_paths",
    "master_seed", "p_list", "K",  "B",      "output"};

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

struct Entry {
    std::string value;
    std::size_t line;
};

double to_double(const std::string& key, std::string_view text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty())
        throw ConfigError(Errc::ConstraintViolation, key, "expected a number, got '" + std::string(text) + "'");
    return v;
}

std::uint64_t to_unsigned(const std::string& key, std::string_view text) {
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty())
        throw ConfigError(Errc::ConstraintViolation, key,
                          "expected a nonnegative integer, got '" + std::string(text) + "'");
    return v;
}

std::vector<double> to_list(const std::string& key, std::string_view text) {
    std::vector<double> out;
    if (text.empty()) return out;
    for (auto item : split(text, ',')) out.push_back(to_double(key, item));
    return out;
}

// True if a/b is a positive integer up to a relative 1e-9.
bool divides(double b, double a) {
    const double r = a / b;
    const double k = std::round(r);
    return k >= 1.0 && std::abs(r - k) <= 1e-9 * k;
}

void check_step(const RunConfig& c, const std::string& key, double h) {
    if (!(h > 0.0 && h < 1.0)) throw ConfigError(Errc::ConstraintViolation, key, "0 < h < 1");
    if (!divides(h, c.model.tau)) throw ConfigError(Errc::ConstraintViolation, key, "tau/h integer");
    if (!divides(h, c.T)) throw ConfigError(Errc::ConstraintViolation, key, "T/h integer");
}

}  // namespace

void validate_config(const RunConfig& c) {
    const auto& p = c.model;
    const std::pair<const char*, double> positive[] = {
        {"lambda", p.lambda}, {"mu", p.mu}, {"gamma", p.gamma}, {"tau", p.tau}};
    for (const auto& [key, v] : positive)
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(Errc::ConstraintViolation, key, "> 0");
    const std::pair<const char*, double> nonnegative[] = {{"sigma", p.sigma}, {"delta", p.delta}, {"beta", p.beta}};
    for (const auto& [key, v] : nonnegative)
        if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError(Errc::ConstraintViolation, key, ">= 0");

    if (auto v = validate(p, c.history); !v) {
        const char* key = c.history.kind() == InitialHistory::Kind::constant ? "xi" : "xi_table";
        throw ConfigError(Errc::ConstraintViolation, key, v.message);
    }

    if (!(c.control.c0 >= p.lambda)) throw ConfigError(Errc::ConstraintViolation, "c0", "c0 >= lambda");
    if (!(c.control.c2 >= p.delta)) throw ConfigError(Errc::ConstraintViolation, "c2", "c2 >= delta");
    if (!(c.control.epsilon > 0.0)) throw ConfigError(Errc::ConstraintViolation, "epsilon", "> 0");

    if (!(c.T > 0.0) || !std::isfinite(c.T)) throw ConfigError(Errc::ConstraintViolation, "T", "> 0");
    check_step(c, "h", c.h);
    check_step(c, "h_ref", c.h_ref);
    if (c.h_list.empty()) throw ConfigError(Errc::ConstraintViolation, "h_list", "at least one step");
    for (double h : c.h_list) {
        check_step(c, "h_list", h);
        if (!divides(c.h_ref, h)) throw ConfigError(Errc::ConstraintViolation, "h_list", "h/h_ref integer");
    }

    if (c.n_paths < 1) throw ConfigError(Errc::ConstraintViolation, "n_paths", ">= 1");
    for (double q : c.p_list)
        if (!(q > 0.0)) throw ConfigError(Errc::ConstraintViolation, "p_list", "p > 0");
    if (c.strike && !(*c.strike >= 0.0)) throw ConfigError(Errc::ConstraintViolation, "K", ">= 0");
    if (c.strike && c.barrier && !(*c.barrier > *c.strike))
        throw ConfigError(Errc::ConstraintViolation, "B", "B > K");
}

RunConfig parse_config(std::string_view text) {
    std::map<std::string, Entry, std::less<>> entries;
    std::size_t line_no = 0;
    for (auto raw : split(text, '\n')) {
        ++line_no;
        auto line = raw.substr(0, raw.find('#'));
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(Errc::SyntaxError, "", "expected 'key = value'", line_no);
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError(Errc::SyntaxError, "", "empty key", line_no);
        if (!kKnownKeys.contains(key)) throw ConfigError(Errc::UnknownKey, key, "unknown key", line_no);
        if (entries.contains(key)) throw ConfigError(Errc::SyntaxError, key, "duplicate key", line_no);
        entries.emplace(key, Entry{value, line_no});
    }

    const auto get = [&](const char* key) -> const std::string* {
        auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second.value;
    };
    const auto required = [&](const char* key) {
        const auto* v = get(key);
        if (!v) throw ConfigError(Errc::ConstraintViolation, key, "required");
        return to_double(key, *v);
    };

    RunConfig c;
    c.model.lambda = required("lambda");
    c.model.mu = required("mu");
    c.model.sigma = required("sigma");
    c.model.gamma = required("gamma");
    c.model.delta = required("delta");
    c.model.beta = required("beta");
    c.model.tau = required("tau");
    c.control.c0 = required("c0");
    c.control.c2 = required("c2");
    if (const auto* v = get("epsilon")) c.control.epsilon = to_double("epsilon", *v);

    if (get("xi") && get("xi_table"))
        throw ConfigError(Errc::ConstraintViolation, "xi_table", "xi and xi_table are mutually exclusive");
    if (const auto* v = get("xi")) c.history = InitialHistory::constant(to_double("xi", *v));
    if (const auto* v = get("xi_table")) {
        std::vector<InitialHistory::Node> nodes;
        for (auto item : split(*v, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string_view::npos)
                throw ConfigError(Errc::ConstraintViolation, "xi_table", "entries must be time:level");
            nodes.emplace_back(to_double("xi_table", trim(item.substr(0, colon))),
                               to_double("xi_table", trim(item.substr(colon + 1))));
        }
        c.history = InitialHistory::tabulated(std::move(nodes));
    }

    if (const auto* v = get("scheme")) {
        if (*v == "bim")
            c.scheme = Scheme::bim;
        else if (*v == "euler")
            c.scheme = Scheme::euler;
        else
            throw ConfigError(Errc::ConstraintViolation, "scheme", "one of bim, euler");
    }
    if (const auto* v = get("T")) c.T = to_double("T", *v);
    if (const auto* v = get("h")) c.h = to_double("h", *v);
    if (const auto* v = get("h_ref")) c.h_ref = to_double("h_ref", *v);
    if (const auto* v = get("h_list"))
        c.h_list = to_list("h_list", *v);
    else
        c.h_list = default_h_list(c.h_ref);
    if (const auto* v = get("n_paths")) c.n_paths = to_unsigned("n_paths", *v);
    if (const auto* v = get("master_seed")) c.master_seed = to_unsigned("master_seed", *v);
    if (const auto* v = get("p_list")) c.p_list = to_list("p_list", *v);
    if (const auto* v = get("K")) c.strike = to_double("K", *v);
    if (const auto* v = get("B")) c.barrier = to_double("B", *v);
    if (const auto* v = get("output")) c.output = *v;

    validate_config(c);
    return c;
}

std::string render_config(const RunConfig& c) {
    std::ostringstream os;
    const auto list = [](const std::vector<double>& xs) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) s += ", ";
            s += format_double(xs[i]);
        }
        return s;
    };
    os << "lambda = " << format_double(c.model.lambda) << '\n'
       << "mu = " << format_double(c.model.mu) << '\n'
       << "sigma = " << format_double(c.model.sigma) << '\n'
       << "gamma = " << format_double(c.model.gamma) << '\n'
       << "delta = " << format_double(c.model.delta) << '\n'
       << "beta = " << format_double(c.model.beta) << '\n'
       << "tau = " << format_double(c.model.tau) << '\n'
       << "c0 = " << format_double(c.control.c0) << '\n'
       << "c2 = " << format_double(c.control.c2) << '\n'
       << "epsilon = " << format_double(c.control.epsilon) << '\n';
    if (c.history.kind() == InitialHistory::Kind::constant) {
        os << "xi = " << format_double(c.history.value()) << '\n';
    } else {
        os << "xi_table = ";
        const auto& t = c.history.table();
        for (std::size_t i = 0; i < t.size(); ++i)
            os << (i ? ", " : "") << format_double(t[i].first) << ':' << format_double(t[i].second);
        os << '\n';
    }
    os << "scheme = " << to_string(c.scheme) << '\n'
       << "T = " << format_double(c.T) << '\n'
       << "h = " << format_double(c.h) << '\n'
       << "h_ref = " << format_double(c.h_ref) << '\n'
       << "h_list = " << list(c.h_list) << '\n'
       << "n_paths = " << c.n_paths << '\n'
       << "master_seed = " << c.master_seed << '\n'
       << "p_list = " << list(c.p_list) << '\n';
    if (c.strike) os << "K = " << format_double(*c.strike) << '\n';
    if (c.barrier) os << "B = " << format_double(*c.barrier) << '\n';
    // A value cannot carry '#' (comment start) or a newline.
    if (!c.output.empty()) os << "output = " << c.output << '\n';
    return os.str();
}

}  // namespace bimcir
