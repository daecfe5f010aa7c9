// Sampling grids, signals, discrete L^p norms, time-frequency shifts,
// Gaussian families and measurable sets. Everything downstream quantizes
// through the conventions fixed here:
//   - signals are n-periodic per axis; translations are circular index shifts
//   - quadrature is the Riemann sum with cell weight dx^d (dx^d dw^d on the
//     time-frequency plane)
//   - the dual axis carries frequencies w_k = k/(n dx), k in [-n/2, n/2)
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tfq/core.hpp"

namespace tfq {

class Grid {
public:
    Grid() = default;
    // Uniform lattice with n samples per axis, spacing dx, left endpoint x0.
    // x0 must be an integer multiple of dx: window translations inside the
    // Gabor/localization machinery land on lattice points only under this
    // alignment. make_grid enforces n even and >= 8.
    Grid(int dim, int n, double dx, double x0);

    int dim() const { return dim_; }
    int n() const { return n_; }
    double dx() const { return dx_; }
    double x0() const { return x0_; }
    double dw() const { return 1.0 / (n_ * dx_); }
    double length() const { return n_ * dx_; }         // period per axis
    long offset() const { return q_; }                  // x0/dx, exact integer

    std::size_t size() const;                           // n^dim
    double cell() const;                                 // dx^dim

    double x(long j) const { return x0_ + static_cast<double>(j) * dx_; }
    double w(long k) const { return static_cast<double>(k - n_ / 2) * dw(); }  // k is a 0-based axis index

    // Frequency axis viewed as a grid in its own right (always centered).
    Grid dual() const { return Grid(dim_, n_, dw(), -0.5 * n_ * dw()); }
    // Refined grid with doubled sampling rate (same extent).
    Grid refined() const { return Grid(dim_, 2 * n_, 0.5 * dx_, x0_); }

    // Row-major multi-index helpers (axis 0 major).
    std::array<int, 2> unravel(std::size_t flat) const;
    std::size_t ravel(const std::array<int, 2>& idx) const;

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.dim_ == b.dim_ && a.n_ == b.n_ && a.dx_ == b.dx_ && a.x0_ == b.x0_;
    }
    friend bool operator!=(const Grid& a, const Grid& b) { return !(a == b); }

private:
    int dim_ = 1;
    int n_ = 8;
    double dx_ = 1.0;
    double x0_ = -4.0;
    long q_ = -4;
};

Grid make_grid(int n, double dx, bool centered = true, int dim = 1, double x0 = 0.0);

// Closed-form generator metadata: amplitude * e^{-pi lambda |x|^2}. Carried by
// signals built from the Gaussian family so dilation can resample exactly.
struct GaussianGen {
    double lambda = 1.0;
    double amplitude = 1.0;
};

struct Signal {
    Grid grid;
    std::vector<cd> v;
    std::optional<GaussianGen> gen;

    Signal() = default;
    explicit Signal(const Grid& g) : grid(g), v(g.size(), cd(0.0, 0.0)) {}
    Signal(const Grid& g, std::vector<cd> samples);

    cd& operator[](std::size_t i) { return v[i]; }
    const cd& operator[](std::size_t i) const { return v[i]; }

    void check_finite() const;
};

// Samples on grid x dual grid, indexed (x-index, w-index) row-major.
struct TFFunction {
    Grid grid;
    std::vector<cd> v;

    TFFunction() = default;
    explicit TFFunction(const Grid& g) : grid(g), v(g.size() * g.size(), cd(0.0, 0.0)) {}

    std::size_t rows() const { return grid.size(); }   // x points
    std::size_t cols() const { return grid.size(); }   // w points
    cd& at(std::size_t xi, std::size_t ki) { return v[xi * cols() + ki]; }
    const cd& at(std::size_t xi, std::size_t ki) const { return v[xi * cols() + ki]; }
};

struct MeasurableSet {
    Grid grid;
    std::vector<std::uint8_t> mask;

    MeasurableSet() = default;
    explicit MeasurableSet(const Grid& g) : grid(g), mask(g.size(), 0) {}

    double measure() const;
    MeasurableSet complement() const;
};

// --- grid-core operations ---------------------------------------------------

double lp_norm(const Signal& f, const Exponent& p);
double lp_norm(const TFFunction& F, const Exponent& p);

// Discrete L^2 inner product dx^d * sum f conj(g).
cd inner(const Signal& f, const Signal& g);

// t -> e^{2 pi i b.t} f(t - a); a and b must be lattice-aligned (multiples of
// dx and dw respectively, within 1e-9 relative).
Signal tf_shift(const Signal& f, const std::vector<double>& a, const std::vector<double>& b);
Signal tf_shift(const Signal& f, double a, double b);  // d = 1 convenience

// Samples of x -> f(lambda x); requires a closed-form generator.
Signal dilate(const Signal& f, double lambda);

enum class GaussianKind { h, phi_l2, phi_l1 };  // h_lambda, Phi_lambda, phi_lambda

// h: e^{-pi lambda |x|^2};  Phi = h/||h||_2 with ||h||_2 = (2 lambda)^{-d/4};
// phi = h/||h||_1 with ||h||_1 = lambda^{-d/2}. Warns on stderr when the grid
// is too narrow for the requested lambda (edge value >= 1e-12).
Signal gaussian(GaussianKind kind, double lambda, const Grid& grid);

double set_measure(const MeasurableSet& s);
MeasurableSet set_from_intervals(const Grid& grid, const std::vector<std::pair<double, double>>& intervals);
MeasurableSet set_from_boxes(const Grid& grid,
                             const std::vector<std::array<std::pair<double, double>, 2>>& boxes);
MeasurableSet full_set(const Grid& grid);

// --- spectra (physical DFT conventions) -------------------------------------

// F(w_k) = dx^d sum_j f_j e^{-2 pi i w_k . x_j}, output on grid.dual() with
// centered frequency order.
Signal spectrum(const Signal& f);
// f(x_j) = dw^d sum_k F_k e^{+2 pi i w_k . x_j}; target is the spatial grid.
Signal inverse_spectrum(const Signal& F, const Grid& target);

// Band-limited 2x refinement (Nyquist bin split symmetrically). d = 1 only.
std::vector<cd> upsample2(const std::vector<cd>& samples);

}  // namespace tfq
