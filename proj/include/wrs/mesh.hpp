#pragma once

#include <cstddef>
#include <vector>

namespace wrs {

// Sampled immersion X(x, y) on a uniform (x, y) grid with per-vertex induced
// conformal factor u, mean curvature H, and Gaussian curvature K.  Vertices
// are stored row-major: index(i, j) = i*ny + j with i the x index.  Both
// directions are periodic (the last row/column connects back to the first).
struct SurfaceMesh {
    int nx = 0;
    int ny = 0;
    double period_x = 0.0;
    double period_y = 0.0;
    std::vector<double> X1, X2, X3;
    std::vector<double> u, H, K;

    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(ny) +
               static_cast<std::size_t>(j);
    }
};

}  // namespace wrs
