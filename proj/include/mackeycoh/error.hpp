#pragma once
#include <stdexcept>
#include <string>

namespace mackeycoh {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};
struct IndexError : Error {
    using Error::Error;
};
struct SubsetViolation : Error {
    using Error::Error;
};
struct OrderTooLarge : Error {
    using Error::Error;
};
struct InvalidHom : Error {
    using Error::Error;
};
struct InvalidDiagram : Error {
    using Error::Error;
};
struct InducedMapFailure : Error {
    using Error::Error;
};
struct UnknownDependencyError : Error {
    using Error::Error;
};
struct StoreConflict : Error {
    using Error::Error;
};
struct DualityViolation : Error {
    using Error::Error;
};
struct ExactnessViolation : Error {
    using Error::Error;
};

}  // namespace mackeycoh
