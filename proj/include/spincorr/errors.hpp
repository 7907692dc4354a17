#pragma once

#include <stdexcept>

namespace spincorr {

struct InvalidDimension : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidSpec : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidTemperature : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidState : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidGrid : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Overflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace spincorr
