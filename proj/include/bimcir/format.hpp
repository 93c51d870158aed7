#pragma once

#include <cstdio>
#include <string>

namespace bimcir {

/// Shortest-safe round-trip rendering: 17 significant digits.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace bimcir
