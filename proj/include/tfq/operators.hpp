// Dense operators on the grid: Weyl quantization, localization (STFT
// multiplier) operators and general Cohen operators, with adjoints, fast
// apply paths and the operator norm.
//
// Matrix convention: action (M f)_t = sum_u M[t,u] f_u dx^d, so entries
// approximate the continuous Schwartz kernel pointwise. Dense size is capped
// at grid.size() <= 512.
#pragma once

#include <string>
#include <vector>

#include "tfq/transforms.hpp"

namespace tfq {

struct Provenance {
    enum class Kind { generic, identity, multiplication, fourier_multiplier };

    Kind kind = Kind::generic;
    std::string description;
    // multiplication: F(x_t); fourier_multiplier: m(w_k) in centered order.
    std::vector<cd> multiplier;
};

struct OperatorMatrix {
    Grid grid;
    std::vector<cd> m;  // N x N row-major, N = grid.size()
    Provenance prov;

    OperatorMatrix() = default;
    explicit OperatorMatrix(const Grid& g);

    std::size_t dim() const { return grid.size(); }
    cd& at(std::size_t t, std::size_t u) { return m[t * dim() + u]; }
    const cd& at(std::size_t t, std::size_t u) const { return m[t * dim() + u]; }
};

OperatorMatrix make_identity(const Grid& grid);

// Weyl operator W^b: M[t,u] = dw^d sum_k b(mid(x_t,x_u), w_k) e^{2 pi i (x_t-x_u).w_k}.
// mid is the short-arc midpoint on the periodic axis; the antipodal separation
// |t-u| = n/2 averages both arcs. Symbols constant along one axis are detected
// and recorded as multiplication / Fourier-multiplier provenance.
OperatorMatrix weyl_matrix(const TFFunction& b);

enum class LocPath { direct, via_weyl };

// L^a_{phi,psi}: direct accumulation over TF lattice shifts, or through the
// Weyl symbol b = a * Wig(psi~, phi~). The direct path is capped at n <= 128.
OperatorMatrix localization_matrix(const TFFunction& a, const Signal& phi, const Signal& psi,
                                   LocPath path = LocPath::via_weyl);

// T_sigma^a = W^{a * conj(sigma~)}; Dirac kernels give the plain Weyl operator.
OperatorMatrix cohen_op_matrix(const TFFunction& a, const CohenKernel& sigma);

// Schwartz-kernel reconstruction: entries of A F2^{-1}[b] on the lattice.
// Agrees with weyl_matrix(b); kept as an independent construction path.
OperatorMatrix schwartz_kernel_matrix(const TFFunction& b);

OperatorMatrix adjoint(const OperatorMatrix& M);

// (M f)_t = sum_u M[t,u] f_u dx^d; provenance-marked operators take the
// diagonal or Fourier-multiplier fast path.
Signal apply(const OperatorMatrix& M, const Signal& f);
Signal apply_dense(const OperatorMatrix& M, const Signal& f);

struct OperatorNorm {
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    bool used_fallback = false;
};

// Largest singular value of the quadrature-weighted action: power iteration
// on M*M (relative tolerance 1e-10, at most 10^4 iterations, all-ones start),
// with a dense Hermitian eigensolve fallback for grid.size() <= 512.
OperatorNorm operator_norm(const OperatorMatrix& M);

}  // namespace tfq
