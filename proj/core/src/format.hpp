#pragma once

#include <cstdio>
#include <string>

namespace risktax::detail {

/// Deterministic 17-significant-digit decimal rendering for CSV output.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace risktax::detail
