// Gabor (STFT), cross-Wigner and Cohen-class representations on the discrete
// time-frequency plane, plus the Gabor<->Wigner conversion used as an internal
// cross-check. The per-slice loops are OpenMP-parallel; each output row is
// written by exactly one thread, so results are schedule-independent.
#pragma once

#include <optional>

#include "tfq/grid.hpp"

namespace tfq {

struct CohenKernel {
    enum class Variant { dirac, gauss_wigner, sampled };

    Variant variant = Variant::dirac;
    double lambda = 1.0;                 // gauss_wigner parameter
    std::optional<TFFunction> samples;   // sampled kernels

    static CohenKernel dirac() { return CohenKernel{}; }
    // sigma(x,w) = phi_{2 lambda}(x) phi_{2/lambda}(w): the Wigner function of
    // the normalized Gaussian window Phi_lambda.
    static CohenKernel gauss_wigner(double lambda);
    static CohenKernel sampled(TFFunction sigma);
};

// V_g f(x_l, w_k) = dx^d sum_j f_j conj(g(x_j - x_l)) e^{-2 pi i w_k . x_j};
// translations are circular, phases reference physical coordinates. d = 1.
TFFunction gabor(const Signal& f, const Signal& g);

// Wig(f,g)(x_j, w_k): half-sample products through 2x Fourier interpolation,
// t-window of one period centered at 0, n-point DFT onto the dual axis. The
// boundary term t = -L/2 is averaged with its +L/2 alias, which makes
// conjugate symmetry Wig(g,f) = conj(Wig(f,g)) exact.
TFFunction wigner(const Signal& f, const Signal& g);

// Right side of the conversion identity 2^d e^{4 pi i x.w} V_{g~}f(2x, 2w),
// filled where (2x, 2w) lands on the lattice without wrapping, zero elsewhere.
TFFunction wigner_via_gabor(const Signal& f, const Signal& g);
// Predicate for the sub-lattice on which wigner_via_gabor is defined.
bool wiggab_defined(const Grid& grid, int xi, int ki);

// Q_sigma(f,g) = sigma * Wig(f,g), zero-padded FFT convolution on the TF
// plane with quadrature weight dx dw; Dirac kernels short-circuit to wigner.
TFFunction cohen_rep(const CohenKernel& sigma, const Signal& f, const Signal& g);

// Kernel samples on the TF grid of `grid` (Dirac = delta column of height
// 1/(dx dw) at the origin cell).
TFFunction sample_kernel(const CohenKernel& sigma, const Grid& grid);

// sigma_tilde-conjugate: z -> conj(sigma(-z)) on the TF plane.
TFFunction reflect_conj(const TFFunction& sigma);

// Zero-padded linear convolution of two TF functions sampled on the same
// plane, cropped back to the plane, times the cell measure dx dw.
TFFunction convolve_tf(const TFFunction& a, const TFFunction& b);

// Circular (periodic) convolution on the TF plane, times the cell measure.
// Operator-symbol smoothing uses this: the discrete model is periodic, and
// indicator symbols like chi_T x 1_w are constant along one axis, which
// zero-padding would truncate.
TFFunction convolve_tf_circular(const TFFunction& a, const TFFunction& b);

// Signal reflection x -> f(-x) by index permutation.
Signal reflect(const Signal& f);

}  // namespace tfq
