#pragma once
#include <numbers>

namespace hew {

// Physical parameters of the traveling-wave problem.
struct PhysParams {
    double S = 0.25;        // bending stiffness
    double tau1 = 2.0;      // tension
    double A = 1.0;         // Atwood ratio
    double Atilde = 0.2;    // gravity parameter
    double gamma_bar = 0.0; // mean vortex sheet strength
    double M = 2.0 * std::numbers::pi; // horizontal period
};

} // namespace hew
