#pragma once
#include <stdexcept>
#include <string>

namespace hew {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// curve length blow-up: mean of cos(theta) too close to zero
struct geometry_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// quadrature unreliable: nodes nearly coincide in the plane
struct quadrature_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hew
