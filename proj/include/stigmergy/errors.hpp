#pragma once

#include <stdexcept>
#include <string>

namespace stigmergy {

// Out-of-domain arguments (negative densities, bad indices, rewards outside
// [0, 1], ...) are reported with std::domain_error / std::out_of_range.

/// A state in which a distribution cannot be formed (every weight is zero).
class degenerate_state_error : public std::runtime_error {
public:
    explicit degenerate_state_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stigmergy
