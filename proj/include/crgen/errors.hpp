#pragma once

#include <stdexcept>
#include <string>

namespace crgen {

// Parameter outside its mathematical domain (|rho| > 1, p outside (0,1), ...).
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Configuration would exhaust memory or time (k too large, n too large, ...).
struct resource_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A closed-form bound was queried outside the regime where it is valid.
struct out_of_regime_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed wire data (unknown color value, mismatched sketch lengths, ...).
struct protocol_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inconsistent setup (coloring without the prefix convention, missing field
// tables, ...).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace crgen
