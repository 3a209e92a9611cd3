#pragma once

#include <stdexcept>

namespace sg {

// Malformed or inconsistent input: parse failures, invalid geometry,
// violated preconditions on user-supplied data.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configured resource bound was exceeded (topology size, atom count).
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace sg
