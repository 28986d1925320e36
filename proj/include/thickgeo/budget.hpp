#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>

namespace thickgeo {

inline constexpr std::size_t kDefaultDepthBudget = 12;

/// Global depth budget; THICKGEO_DEPTH_BUDGET overrides the default of 12.
inline std::size_t depth_budget() {
    if (const char* env = std::getenv("THICKGEO_DEPTH_BUDGET")) {
        try {
            long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (...) {
        }
    }
    return kDefaultDepthBudget;
}

} // namespace thickgeo
