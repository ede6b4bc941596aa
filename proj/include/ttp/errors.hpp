#pragma once

#include <stdexcept>
#include <string>

namespace ttp {

// Base for all library errors so callers can catch one type at the CLI edge.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct MalformedHeader : Error {
    using Error::Error;
};
struct CountMismatch : Error {
    using Error::Error;
};
struct BadItemCity : Error {
    using Error::Error;
};
struct NonPositiveValue : Error {
    using Error::Error;
};

struct CapacityExceeded : Error {
    using Error::Error;
};
struct BadPositions : Error {
    using Error::Error;
};
struct EmptySequence : Error {
    using Error::Error;
};

struct InfeasibleInstance : Error {
    using Error::Error;
};
struct TooLarge : Error {
    using Error::Error;
};
struct OutOfRange : Error {
    using Error::Error;
};

}  // namespace ttp
