#pragma once

#include <stdexcept>
#include <string>

namespace adacbf {

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonFiniteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested nesting exceeds the configured or compiled dual depth.
struct DepthError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline void require_dims(bool ok, const std::string& what) {
    if (!ok) throw DimensionError(what);
}

}  // namespace adacbf
