#pragma once

// The conserved-quantity choice shared by the flow engine, diagnostics, and IO.

#include <stdexcept>
#include <string>

namespace hypflow {

enum class Mode { AreaPreserving, LengthPreserving };

inline const char* to_string(Mode m) {
    return m == Mode::AreaPreserving ? "area" : "length";
}

inline Mode mode_from_string(const std::string& s) {
    if (s == "area") return Mode::AreaPreserving;
    if (s == "length") return Mode::LengthPreserving;
    throw std::invalid_argument("mode must be 'area' or 'length', got '" + s + "'");
}

}  // namespace hypflow
