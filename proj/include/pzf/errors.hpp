#pragma once

#include <stdexcept>

namespace pzf {

// A configurable resource cap was exceeded (exact-ept vertex cap, chain
// dimension caps). Maps to CLI exit code 3.
struct CapExceededError final : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pzf
