// Serial reference implementations, straight from the defining sums with no
// FFT and no parallelism. They are deliberately slow (O(n^2)..O(n^4)) and are
// kept for testing: the optimized OpenMP kernels must agree with these on
// small grids, and the bench tool compares their runtimes.
#pragma once

#include <vector>

#include "tfq/grid.hpp"
#include "tfq/transforms.hpp"

namespace tfq::ref {

// X_k = sum_j x_j e^{-sign 2 pi i jk/n}, direct O(n^2). sign=+1 is forward.
std::vector<cd> dft(const std::vector<cd>& x, int sign);

// Trigonometric interpolation onto the half-step lattice, direct sums.
std::vector<cd> upsample2(const std::vector<cd>& samples);

TFFunction gabor(const Signal& f, const Signal& g);
TFFunction wigner(const Signal& f, const Signal& g);
TFFunction convolve_tf(const TFFunction& a, const TFFunction& b);

// Dense Weyl matrix by the explicit triple sum (short-arc midpoint).
std::vector<cd> weyl_matrix_entries(const TFFunction& b);

// Dense localization matrix by the quadruple sum over (x_l, w_k) pairs.
std::vector<cd> localization_entries(const TFFunction& a, const Signal& phi, const Signal& psi);

}  // namespace tfq::ref
