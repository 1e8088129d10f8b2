#pragma once

#include <stdexcept>
#include <string>

namespace qhlat {

// Bad input: wrong dimensions, malformed parameters, out-of-domain requests.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical routine failed to deliver its contract (non-convergence,
// ill-separated null space, refused degenerate spectrum).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A search terminated without locating what it was asked for.
class NotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qhlat
