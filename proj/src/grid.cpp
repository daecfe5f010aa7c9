#include "tfq/grid.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "tfq/fft.hpp"

namespace tfq {

namespace {

long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

Grid::Grid(int dim, int n, double dx, double x0) : dim_(dim), n_(n), dx_(dx), x0_(x0) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("Grid: dim must be 1 or 2");
    if (n < 8 || n % 2 != 0) throw std::invalid_argument("Grid: n must be even and >= 8");
    if (!(dx > 0.0)) throw std::invalid_argument("Grid: dx must be positive");
    double qf = x0 / dx;
    double qr = std::round(qf);
    if (std::abs(qf - qr) > 1e-9 * std::max(1.0, std::abs(qf)))
        throw std::invalid_argument("Grid: x0 must be an integer multiple of dx");
    q_ = static_cast<long>(qr);
}

std::size_t Grid::size() const {
    std::size_t s = static_cast<std::size_t>(n_);
    return dim_ == 1 ? s : s * s;
}

double Grid::cell() const { return dim_ == 1 ? dx_ : dx_ * dx_; }

std::array<int, 2> Grid::unravel(std::size_t flat) const {
    if (dim_ == 1) return {static_cast<int>(flat), 0};
    return {static_cast<int>(flat / n_), static_cast<int>(flat % n_)};
}

std::size_t Grid::ravel(const std::array<int, 2>& idx) const {
    if (dim_ == 1) return static_cast<std::size_t>(idx[0]);
    return static_cast<std::size_t>(idx[0]) * n_ + idx[1];
}

Grid make_grid(int n, double dx, bool centered, int dim, double x0) {
    return Grid(dim, n, dx, centered ? -0.5 * n * dx : x0);
}

Signal::Signal(const Grid& g, std::vector<cd> samples) : grid(g), v(std::move(samples)) {
    if (v.size() != grid.size()) throw std::invalid_argument("Signal: sample count does not match grid");
}

void Signal::check_finite() const {
    for (const cd& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::runtime_error("Signal: non-finite sample");
}

double MeasurableSet::measure() const {
    std::size_t c = 0;
    for (auto m : mask) c += m ? 1 : 0;
    return static_cast<double>(c) * grid.cell();
}

MeasurableSet MeasurableSet::complement() const {
    MeasurableSet out(grid);
    for (std::size_t i = 0; i < mask.size(); ++i) out.mask[i] = mask[i] ? 0 : 1;
    return out;
}

double lp_norm(const Signal& f, const Exponent& p) {
    if (p.is_inf()) {
        double m = 0.0;
        for (const cd& z : f.v) m = std::max(m, std::abs(z));
        return m;
    }
    const double pv = p.value();
    double s = 0.0;
    for (const cd& z : f.v) s += std::pow(std::abs(z), pv);
    return std::pow(s * f.grid.cell(), 1.0 / pv);
}

double lp_norm(const TFFunction& F, const Exponent& p) {
    if (p.is_inf()) {
        double m = 0.0;
        for (const cd& z : F.v) m = std::max(m, std::abs(z));
        return m;
    }
    const double pv = p.value();
    const Grid& g = F.grid;
    const double cell = g.cell() * g.dual().cell();
    double s = 0.0;
    for (const cd& z : F.v) s += std::pow(std::abs(z), pv);
    return std::pow(s * cell, 1.0 / pv);
}

cd inner(const Signal& f, const Signal& g) {
    if (f.grid != g.grid) throw std::invalid_argument("inner: grid mismatch");
    cd s(0.0, 0.0);
    for (std::size_t i = 0; i < f.v.size(); ++i) s += f.v[i] * std::conj(g.v[i]);
    return s * f.grid.cell();
}

namespace {

long aligned_steps(double shift, double spacing, const char* what) {
    double sf = shift / spacing;
    double sr = std::round(sf);
    if (std::abs(sf - sr) > 1e-9 * std::max(1.0, std::abs(sf)))
        throw std::invalid_argument(std::string("tf_shift: ") + what + " is not lattice-aligned");
    return static_cast<long>(sr);
}

}  // namespace

Signal tf_shift(const Signal& f, const std::vector<double>& a, const std::vector<double>& b) {
    const Grid& g = f.grid;
    const int d = g.dim();
    if (static_cast<int>(a.size()) != d || static_cast<int>(b.size()) != d)
        throw std::invalid_argument("tf_shift: shift vectors must have grid dimension");
    std::array<long, 2> s{0, 0};
    for (int ax = 0; ax < d; ++ax) {
        s[ax] = aligned_steps(a[ax], g.dx(), "time shift");
        (void)aligned_steps(b[ax], g.dw(), "frequency shift");
    }
    const int n = g.n();
    Signal out(g);
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
        auto idx = g.unravel(flat);
        std::array<int, 2> src = idx;
        double phase = 0.0;
        for (int ax = 0; ax < d; ++ax) {
            src[ax] = static_cast<int>(mod(idx[ax] - s[ax], n));
            phase += b[ax] * g.x(idx[ax]);
        }
        out.v[flat] = std::polar(1.0, 2.0 * kPi * phase) * f.v[g.ravel(src)];
    }
    return out;
}

Signal tf_shift(const Signal& f, double a, double b) {
    return tf_shift(f, std::vector<double>{a}, std::vector<double>{b});
}

Signal dilate(const Signal& f, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
    if (!f.gen) throw std::invalid_argument("dilate: signal has no closed-form generator");
    const GaussianGen src = *f.gen;
    GaussianGen out{src.lambda * lambda * lambda, src.amplitude};
    const Grid& g = f.grid;
    Signal r(g);
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
        auto idx = g.unravel(flat);
        double x2 = 0.0;
        for (int ax = 0; ax < g.dim(); ++ax) {
            double xv = g.x(idx[ax]);
            x2 += xv * xv;
        }
        r.v[flat] = out.amplitude * std::exp(-kPi * out.lambda * x2);
    }
    r.gen = out;
    return r;
}

Signal gaussian(GaussianKind kind, double lambda, const Grid& grid) {
    if (!(lambda > 0.0)) throw std::invalid_argument("gaussian: lambda must be positive");
    const int d = grid.dim();
    double amp = 1.0;
    switch (kind) {
        case GaussianKind::h: amp = 1.0; break;
        case GaussianKind::phi_l2: amp = std::pow(2.0 * lambda, 0.25 * d); break;
        case GaussianKind::phi_l1: amp = std::pow(lambda, 0.5 * d); break;
    }
    double edge = std::max(std::abs(grid.x0()), std::abs(grid.x(grid.n() - 1)));
    if (std::exp(-kPi * lambda * edge * edge) >= 1e-12)
        std::cerr << "tfq: warning: grid too narrow for gaussian(lambda=" << lambda
                  << "); truncation above 1e-12\n";
    Signal r(grid);
    for (std::size_t flat = 0; flat < grid.size(); ++flat) {
        auto idx = grid.unravel(flat);
        double x2 = 0.0;
        for (int ax = 0; ax < d; ++ax) {
            double xv = grid.x(idx[ax]);
            x2 += xv * xv;
        }
        r.v[flat] = amp * std::exp(-kPi * lambda * x2);
    }
    r.gen = GaussianGen{lambda, amp};
    return r;
}

double set_measure(const MeasurableSet& s) { return s.measure(); }

MeasurableSet set_from_intervals(const Grid& grid, const std::vector<std::pair<double, double>>& intervals) {
    if (grid.dim() != 1) throw std::invalid_argument("set_from_intervals: 1-d grids only");
    MeasurableSet s(grid);
    for (int j = 0; j < grid.n(); ++j) {
        double xj = grid.x(j);
        for (const auto& [a, b] : intervals)
            if (xj >= a && xj <= b) {
                s.mask[j] = 1;
                break;
            }
    }
    return s;
}

MeasurableSet set_from_boxes(const Grid& grid,
                             const std::vector<std::array<std::pair<double, double>, 2>>& boxes) {
    if (grid.dim() != 2) throw std::invalid_argument("set_from_boxes: 2-d grids only");
    MeasurableSet s(grid);
    for (std::size_t flat = 0; flat < grid.size(); ++flat) {
        auto idx = grid.unravel(flat);
        double x0v = grid.x(idx[0]), x1v = grid.x(idx[1]);
        for (const auto& box : boxes) {
            if (x0v >= box[0].first && x0v <= box[0].second && x1v >= box[1].first && x1v <= box[1].second) {
                s.mask[flat] = 1;
                break;
            }
        }
    }
    return s;
}

MeasurableSet full_set(const Grid& grid) {
    MeasurableSet s(grid);
    std::fill(s.mask.begin(), s.mask.end(), 1);
    return s;
}

namespace {

// One spectral pass along `axis` of a d-dimensional row-major array:
// out[k] = scale * twiddle(k) * FFT(line)[k mod n] in centered order, or the
// matching inverse. Shared by spectrum/inverse_spectrum.
void axis_dft(std::vector<cd>& data, const Grid& grid, int axis, bool forward, const Grid& spatial) {
    const int n = grid.n();
    const Fft plan(static_cast<std::size_t>(n));
    const double dw = spatial.dw();
    const double x0 = spatial.x0();
    const std::size_t stride = (grid.dim() == 2 && axis == 0) ? static_cast<std::size_t>(n) : 1;
    const std::size_t lines = grid.size() / n;

    std::vector<cd> line(n), res(n);
    for (std::size_t li = 0; li < lines; ++li) {
        std::size_t base = (grid.dim() == 1) ? 0 : (axis == 0 ? li : li * n);
        for (int j = 0; j < n; ++j) line[j] = data[base + j * stride];
        if (forward) {
            plan.forward(line);
            for (int ki = 0; ki < n; ++ki) {
                long k = ki - n / 2;
                double ang = -2.0 * kPi * static_cast<double>(k) * dw * x0;
                res[ki] = spatial.dx() * std::polar(1.0, ang) * line[static_cast<std::size_t>(mod(k, n))];
            }
        } else {
            // undo centered order and the physical phase, then inverse FFT
            for (int ki = 0; ki < n; ++ki) {
                long k = ki - n / 2;
                double ang = 2.0 * kPi * static_cast<double>(k) * dw * x0;
                res[static_cast<std::size_t>(mod(k, n))] = std::polar(1.0, ang) * line[ki];
            }
            plan.inverse(res);
            for (int j = 0; j < n; ++j) res[j] *= static_cast<double>(n) * dw;
        }
        for (int j = 0; j < n; ++j) data[base + j * stride] = res[j];
    }
}

}  // namespace

Signal spectrum(const Signal& f) {
    const Grid& g = f.grid;
    Signal out(g.dual());
    out.v = f.v;
    for (int ax = 0; ax < g.dim(); ++ax) axis_dft(out.v, g, ax, true, g);
    return out;
}

Signal inverse_spectrum(const Signal& F, const Grid& target) {
    if (F.grid.dim() != target.dim() || F.grid.n() != target.n())
        throw std::invalid_argument("inverse_spectrum: shape mismatch");
    Signal out(target);
    out.v = F.v;
    for (int ax = 0; ax < target.dim(); ++ax) axis_dft(out.v, target, ax, false, target);
    return out;
}

std::vector<cd> upsample2(const std::vector<cd>& samples) {
    const std::size_t n = samples.size();
    if (n % 2 != 0) throw std::invalid_argument("upsample2: even length required");
    Fft plan(n), plan2(2 * n);
    std::vector<cd> spec = samples;
    plan.forward(spec);
    std::vector<cd> padded(2 * n, cd(0.0, 0.0));
    for (std::size_t k = 0; k < n / 2; ++k) padded[k] = spec[k];
    padded[n / 2] = 0.5 * spec[n / 2];
    padded[2 * n - n / 2] = 0.5 * spec[n / 2];
    for (std::size_t k = n / 2 + 1; k < n; ++k) padded[n + k] = spec[k];
    plan2.inverse(padded);
    for (auto& z : padded) z *= 2.0;
    return padded;
}

}  // namespace tfq
