#pragma once

#include <stdexcept>
#include <string>

namespace gdiff {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace gdiff
