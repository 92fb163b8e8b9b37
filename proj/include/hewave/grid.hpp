#pragma once
#include <vector>
#include "hewave/errors.hpp"

namespace hew {

// Uniform periodic collocation grid on [0, 2pi).
// n_modes counts the retained wavenumbers 1..n_modes of the unknowns; everything
// above (including the Nyquist bin) is truncated to zero.  A sine mode at the
// Nyquist frequency vanishes identically on the grid, hence the n/2 - 1 cap.
struct GridSpec {
    int n_nodes = 128;
    int n_modes = 63;

    static GridSpec with_nodes(int n) { return GridSpec{n, n / 2 - 1}; }

    void validate() const {
        if (n_nodes < 8 || n_nodes % 2 != 0)
            throw config_error("grid: n_nodes must be even and >= 8");
        if (n_modes < 1 || n_modes > n_nodes / 2 - 1)
            throw config_error("grid: need 1 <= n_modes <= n_nodes/2 - 1");
    }

    std::vector<double> nodes() const;
};

} // namespace hew
