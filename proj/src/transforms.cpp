#include "tfq/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "tfq/fft.hpp"

namespace tfq {

namespace {

long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

void require_1d_pair(const Signal& f, const Signal& g, const char* op) {
    if (f.grid != g.grid) throw std::invalid_argument(std::string(op) + ": grid mismatch");
    if (f.grid.dim() != 1) throw std::invalid_argument(std::string(op) + ": d = 1 required");
}

}  // namespace

CohenKernel CohenKernel::gauss_wigner(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("CohenKernel: lambda must be positive");
    CohenKernel k;
    k.variant = Variant::gauss_wigner;
    k.lambda = lambda;
    return k;
}

CohenKernel CohenKernel::sampled(TFFunction sigma) {
    CohenKernel k;
    k.variant = Variant::sampled;
    k.samples = std::move(sigma);
    return k;
}

Signal reflect(const Signal& f) {
    const Grid& g = f.grid;
    const long n = g.n();
    const long q = g.offset();
    Signal out(g);
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
        auto idx = g.unravel(flat);
        std::array<int, 2> src = idx;
        for (int ax = 0; ax < g.dim(); ++ax) src[ax] = static_cast<int>(mod(-idx[ax] - 2 * q, n));
        out.v[flat] = f.v[g.ravel(src)];
    }
    out.gen = f.gen;  // the Gaussian family is even
    return out;
}

TFFunction gabor(const Signal& f, const Signal& g) {
    require_1d_pair(f, g, "gabor");
    const Grid& gr = f.grid;
    const int n = gr.n();
    const long q = gr.offset();
    const double dx = gr.dx();
    const double dw = gr.dw();
    const double x0 = gr.x0();
    const Fft plan(static_cast<std::size_t>(n));

    // phase twiddle e^{-2 pi i k dw x0} for centered k
    std::vector<cd> tw(n);
    for (int ki = 0; ki < n; ++ki) {
        long k = ki - n / 2;
        tw[ki] = std::polar(dx, -2.0 * kPi * static_cast<double>(k) * dw * x0);
    }

    TFFunction V(gr);
#pragma omp parallel for schedule(static)
    for (int l = 0; l < n; ++l) {
        std::vector<cd> h(n);
        for (int j = 0; j < n; ++j) h[j] = f.v[j] * std::conj(g.v[mod(j - l - q, n)]);
        plan.forward(h);
        for (int ki = 0; ki < n; ++ki) {
            long k = ki - n / 2;
            V.at(l, ki) = tw[ki] * h[static_cast<std::size_t>(mod(k, n))];
        }
    }
    return V;
}

TFFunction wigner(const Signal& f, const Signal& g) {
    require_1d_pair(f, g, "wigner");
    const Grid& gr = f.grid;
    const int n = gr.n();
    const long n2 = 2 * n;
    const double dx = gr.dx();
    const Fft plan(static_cast<std::size_t>(n));

    const std::vector<cd> f2 = upsample2(f.v);
    const std::vector<cd> g2 = upsample2(g.v);

    TFFunction W(gr);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n; ++j) {
        std::vector<cd> c(n);
        for (int m = 0; m < n; ++m)
            c[m] = f2[mod(2 * j + m - n / 2, n2)] * std::conj(g2[mod(2 * j - m + n / 2, n2)]);
        // boundary term: average t = -L/2 with its +L/2 alias
        c[0] = 0.5 * (f2[mod(2 * j - n / 2, n2)] * std::conj(g2[mod(2 * j + n / 2, n2)]) +
                      f2[mod(2 * j + n / 2, n2)] * std::conj(g2[mod(2 * j - n / 2, n2)]));
        plan.forward(c);
        for (int ki = 0; ki < n; ++ki) {
            long k = ki - n / 2;
            double sgn = (k % 2 == 0) ? 1.0 : -1.0;
            W.at(j, ki) = dx * sgn * c[static_cast<std::size_t>(mod(k, n))];
        }
    }
    return W;
}

bool wiggab_defined(const Grid& grid, int xi, int ki) {
    const int n = grid.n();
    long li = 2L * xi + grid.offset();
    long k = ki - n / 2;
    return li >= 0 && li < n && 2 * k >= -n / 2 && 2 * k < n / 2;
}

TFFunction wigner_via_gabor(const Signal& f, const Signal& g) {
    require_1d_pair(f, g, "wigner_via_gabor");
    const Grid& gr = f.grid;
    const int n = gr.n();
    const double dw = gr.dw();
    TFFunction V = gabor(f, reflect(g));
    TFFunction out(gr);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n; ++j) {
        long li = 2L * j + gr.offset();
        if (li < 0 || li >= n) continue;
        double xj = gr.x(j);
        for (int ki = 0; ki < n; ++ki) {
            long k = ki - n / 2;
            if (2 * k < -n / 2 || 2 * k >= n / 2) continue;
            double wk = static_cast<double>(k) * dw;
            cd phase = std::polar(2.0, 4.0 * kPi * xj * wk);
            out.at(j, ki) = phase * V.at(static_cast<std::size_t>(li), static_cast<std::size_t>(2 * k + n / 2));
        }
    }
    return out;
}

TFFunction sample_kernel(const CohenKernel& sigma, const Grid& grid) {
    if (grid.dim() != 1) throw std::invalid_argument("sample_kernel: d = 1 required");
    const int n = grid.n();
    TFFunction K(grid);
    switch (sigma.variant) {
        case CohenKernel::Variant::dirac: {
            long xi = mod(-grid.offset(), n);        // x = 0
            long ki = n / 2;                          // w = 0
            K.at(static_cast<std::size_t>(xi), static_cast<std::size_t>(ki)) =
                cd(1.0 / (grid.cell() * grid.dual().cell()), 0.0);
            break;
        }
        case CohenKernel::Variant::gauss_wigner: {
            const double lam = sigma.lambda;
            const Grid dual = grid.dual();
            std::vector<double> px(n), pw(n);
            for (int j = 0; j < n; ++j) {
                double xv = grid.x(j);
                px[j] = std::sqrt(2.0 * lam) * std::exp(-2.0 * kPi * lam * xv * xv);
            }
            for (int ki = 0; ki < n; ++ki) {
                double wv = dual.x(ki);
                pw[ki] = std::sqrt(2.0 / lam) * std::exp(-2.0 * kPi * wv * wv / lam);
            }
            for (int j = 0; j < n; ++j)
                for (int ki = 0; ki < n; ++ki) K.at(j, ki) = px[j] * pw[ki];
            break;
        }
        case CohenKernel::Variant::sampled: {
            if (!sigma.samples) throw std::invalid_argument("sample_kernel: missing samples");
            if (sigma.samples->grid != grid)
                throw std::invalid_argument("sample_kernel: kernel sampled on a different grid");
            K = *sigma.samples;
            break;
        }
    }
    return K;
}

TFFunction reflect_conj(const TFFunction& sigma) {
    const Grid& g = sigma.grid;
    const int n = g.n();
    const long q = g.offset();
    TFFunction out(g);
    for (int xi = 0; xi < n; ++xi) {
        long rx = mod(-xi - 2 * q, n);
        for (int ki = 0; ki < n; ++ki) {
            long rk = mod(n - ki, n);  // dual axis is centered: -w_k lives at n - ki
            out.at(xi, ki) = std::conj(sigma.at(static_cast<std::size_t>(rx), static_cast<std::size_t>(rk)));
        }
    }
    return out;
}

TFFunction convolve_tf(const TFFunction& a, const TFFunction& b) {
    if (a.grid != b.grid) throw std::invalid_argument("convolve_tf: grid mismatch");
    const Grid& g = a.grid;
    if (g.dim() != 1) throw std::invalid_argument("convolve_tf: d = 1 required");
    const int n = g.n();
    const int P = 2 * n;
    const Fft plan(static_cast<std::size_t>(P));

    auto pad = [&](const TFFunction& t) {
        std::vector<cd> out(static_cast<std::size_t>(P) * P, cd(0.0, 0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i) * P + j] = t.at(i, j);
        return out;
    };
    auto fft2 = [&](std::vector<cd>& m, bool inv) {
        std::vector<cd> line(P);
#pragma omp parallel for schedule(static) firstprivate(line)
        for (int r = 0; r < P; ++r) {
            for (int j = 0; j < P; ++j) line[j] = m[static_cast<std::size_t>(r) * P + j];
            inv ? plan.inverse(line) : plan.forward(line);
            for (int j = 0; j < P; ++j) m[static_cast<std::size_t>(r) * P + j] = line[j];
        }
#pragma omp parallel for schedule(static) firstprivate(line)
        for (int cidx = 0; cidx < P; ++cidx) {
            for (int j = 0; j < P; ++j) line[j] = m[static_cast<std::size_t>(j) * P + cidx];
            inv ? plan.inverse(line) : plan.forward(line);
            for (int j = 0; j < P; ++j) m[static_cast<std::size_t>(j) * P + cidx] = line[j];
        }
    };

    std::vector<cd> A = pad(a), B = pad(b);
    fft2(A, false);
    fft2(B, false);
    for (std::size_t i = 0; i < A.size(); ++i) A[i] *= B[i];
    fft2(A, true);

    const long qx = g.offset();
    const long qw = -n / 2;
    const double scale = g.cell() * g.dual().cell();
    TFFunction out(g);
    for (int mx = 0; mx < n; ++mx) {
        long sx = mx - qx;  // in [0, 2n-1] by grid alignment
        for (int mk = 0; mk < n; ++mk) {
            long sw = mk - qw;
            out.at(mx, mk) = scale * A[static_cast<std::size_t>(sx) * P + static_cast<std::size_t>(sw)];
        }
    }
    return out;
}

TFFunction convolve_tf_circular(const TFFunction& a, const TFFunction& b) {
    if (a.grid != b.grid) throw std::invalid_argument("convolve_tf_circular: grid mismatch");
    const Grid& g = a.grid;
    if (g.dim() != 1) throw std::invalid_argument("convolve_tf_circular: d = 1 required");
    const int n = g.n();
    const Fft plan(static_cast<std::size_t>(n));

    auto fft2 = [&](std::vector<cd>& m, bool inv) {
        std::vector<cd> line(n);
#pragma omp parallel for schedule(static) firstprivate(line)
        for (int r = 0; r < n; ++r) {
            for (int j = 0; j < n; ++j) line[j] = m[static_cast<std::size_t>(r) * n + j];
            inv ? plan.inverse(line) : plan.forward(line);
            for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(r) * n + j] = line[j];
        }
#pragma omp parallel for schedule(static) firstprivate(line)
        for (int cidx = 0; cidx < n; ++cidx) {
            for (int j = 0; j < n; ++j) line[j] = m[static_cast<std::size_t>(j) * n + cidx];
            inv ? plan.inverse(line) : plan.forward(line);
            for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(j) * n + cidx] = line[j];
        }
    };

    std::vector<cd> A = a.v, B = b.v;
    fft2(A, false);
    fft2(B, false);
    for (std::size_t i = 0; i < A.size(); ++i) A[i] *= B[i];
    fft2(A, true);

    const long qx = g.offset();
    const long qw = -n / 2;
    const double scale = g.cell() * g.dual().cell();
    TFFunction out(g);
    for (int mx = 0; mx < n; ++mx) {
        long sx = mod(mx - qx, n);
        for (int mk = 0; mk < n; ++mk) {
            long sw = mod(mk - qw, n);
            out.at(mx, mk) = scale * A[static_cast<std::size_t>(sx) * n + static_cast<std::size_t>(sw)];
        }
    }
    return out;
}

TFFunction cohen_rep(const CohenKernel& sigma, const Signal& f, const Signal& g) {
    if (sigma.variant == CohenKernel::Variant::dirac) return wigner(f, g);
    TFFunction W = wigner(f, g);
    TFFunction K = sample_kernel(sigma, f.grid);
    return convolve_tf(K, W);
}

}  // namespace tfq
