#include "tfq/ref.hpp"

#include <cmath>
#include <stdexcept>

namespace tfq::ref {

namespace {

long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

cd cis(double ang) { return cd(std::cos(ang), std::sin(ang)); }

}  // namespace

std::vector<cd> dft(const std::vector<cd>& x, int sign) {
    const std::size_t n = x.size();
    std::vector<cd> out(n, cd(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        cd acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            acc += x[j] * cis(-sign * 2.0 * kPi * static_cast<double>(j * k % n) / static_cast<double>(n));
        out[k] = acc;
    }
    return out;
}

std::vector<cd> upsample2(const std::vector<cd>& samples) {
    const long n = static_cast<long>(samples.size());
    std::vector<cd> spec = dft(samples, +1);
    std::vector<cd> out(2 * n, cd(0.0, 0.0));
    for (long i = 0; i < 2 * n; ++i) {
        cd acc(0.0, 0.0);
        for (long k = -(n / 2 - 1); k <= n / 2 - 1; ++k)
            acc += spec[mod(k, n)] * cis(kPi * static_cast<double>(k) * static_cast<double>(i) / n);
        acc += spec[n / 2] * std::cos(0.5 * kPi * static_cast<double>(i));
        out[i] = acc / static_cast<double>(n);
    }
    return out;
}

TFFunction gabor(const Signal& f, const Signal& g) {
    if (f.grid != g.grid || f.grid.dim() != 1) throw std::invalid_argument("ref::gabor: bad inputs");
    const Grid& gr = f.grid;
    const long n = gr.n();
    const long q = gr.offset();
    TFFunction V(gr);
    for (long l = 0; l < n; ++l) {
        for (long ki = 0; ki < n; ++ki) {
            double wk = gr.dual().x(static_cast<int>(ki));
            cd acc(0.0, 0.0);
            for (long j = 0; j < n; ++j)
                acc += f.v[j] * std::conj(g.v[mod(j - l - q, n)]) * cis(-2.0 * kPi * wk * gr.x(j));
            V.at(l, ki) = gr.dx() * acc;
        }
    }
    return V;
}

TFFunction wigner(const Signal& f, const Signal& g) {
    if (f.grid != g.grid || f.grid.dim() != 1) throw std::invalid_argument("ref::wigner: bad inputs");
    const Grid& gr = f.grid;
    const long n = gr.n();
    const long n2 = 2 * n;
    std::vector<cd> f2 = upsample2(f.v), g2 = upsample2(g.v);
    const double L = gr.length();
    TFFunction W(gr);
    for (long j = 0; j < n; ++j) {
        std::vector<cd> c(n);
        for (long m = 0; m < n; ++m)
            c[m] = f2[mod(2 * j + m - n / 2, n2)] * std::conj(g2[mod(2 * j - m + n / 2, n2)]);
        c[0] = 0.5 * (f2[mod(2 * j - n / 2, n2)] * std::conj(g2[mod(2 * j + n / 2, n2)]) +
                      f2[mod(2 * j + n / 2, n2)] * std::conj(g2[mod(2 * j - n / 2, n2)]));
        for (long ki = 0; ki < n; ++ki) {
            double wk = gr.dual().x(static_cast<int>(ki));
            cd acc(0.0, 0.0);
            for (long m = 0; m < n; ++m) {
                double tm = static_cast<double>(m) * gr.dx() - 0.5 * L;
                acc += c[m] * cis(-2.0 * kPi * wk * tm);
            }
            W.at(j, ki) = gr.dx() * acc;
        }
    }
    return W;
}

TFFunction convolve_tf(const TFFunction& a, const TFFunction& b) {
    if (a.grid != b.grid || a.grid.dim() != 1) throw std::invalid_argument("ref::convolve_tf: bad inputs");
    const Grid& g = a.grid;
    const long n = g.n();
    const long qx = g.offset();
    const long qw = -n / 2;
    const double scale = g.cell() * g.dual().cell();
    TFFunction out(g);
    for (long mx = 0; mx < n; ++mx) {
        for (long mk = 0; mk < n; ++mk) {
            cd acc(0.0, 0.0);
            for (long i = 0; i < n; ++i) {
                long j = mx - qx - i;  // linear (zero-padded) index on the x axis
                if (j < 0 || j >= n) continue;
                for (long ik = 0; ik < n; ++ik) {
                    long jk = mk - qw - ik;
                    if (jk < 0 || jk >= n) continue;
                    acc += a.at(i, ik) * b.at(j, jk);
                }
            }
            out.at(mx, mk) = scale * acc;
        }
    }
    return out;
}

std::vector<cd> weyl_matrix_entries(const TFFunction& b) {
    const Grid& g = b.grid;
    const long n = g.n();
    const long n2 = 2 * n;
    const double dw = g.dw();
    // symbol on the half-step x lattice, per frequency column
    std::vector<std::vector<cd>> b2(static_cast<std::size_t>(n));
    {
        std::vector<cd> col(n);
        for (long ki = 0; ki < n; ++ki) {
            for (long xi = 0; xi < n; ++xi) col[xi] = b.at(xi, ki);
            b2[ki] = upsample2(col);
        }
    }
    std::vector<cd> M(static_cast<std::size_t>(n) * n, cd(0.0, 0.0));
    for (long t = 0; t < n; ++t) {
        for (long u = 0; u < n; ++u) {
            long d = t - u;
            long dwrap = mod(d + n / 2, n) - n / 2;  // short-arc separation
            long nu = (d - dwrap) / n;
            cd acc(0.0, 0.0);
            for (long ki = 0; ki < n; ++ki) {
                long k = ki - n / 2;
                cd ph = cis(2.0 * kPi * static_cast<double>(mod(d * k, n)) / static_cast<double>(n));
                cd mid;
                if (dwrap == -n / 2)
                    mid = 0.5 * (b2[ki][mod(t + u, n2)] + b2[ki][mod(t + u + n, n2)]);
                else
                    mid = b2[ki][mod(t + u - nu * n, n2)];
                acc += mid * ph;
            }
            M[static_cast<std::size_t>(t) * n + u] = dw * acc;
        }
    }
    return M;
}

std::vector<cd> localization_entries(const TFFunction& a, const Signal& phi, const Signal& psi) {
    const Grid& g = a.grid;
    const long n = g.n();
    const long q = g.offset();
    const double cell = g.cell() * g.dual().cell();
    std::vector<cd> M(static_cast<std::size_t>(n) * n, cd(0.0, 0.0));
    for (long t = 0; t < n; ++t) {
        for (long u = 0; u < n; ++u) {
            cd acc(0.0, 0.0);
            for (long l = 0; l < n; ++l) {
                cd win = psi.v[mod(t - l - q, n)] * std::conj(phi.v[mod(u - l - q, n)]);
                cd inner(0.0, 0.0);
                for (long ki = 0; ki < n; ++ki) {
                    double wk = g.dual().x(static_cast<int>(ki));
                    inner += a.at(l, ki) * cis(2.0 * kPi * wk * (g.x(t) - g.x(u)));
                }
                acc += win * inner;
            }
            M[static_cast<std::size_t>(t) * n + u] = cell * acc;
        }
    }
    return M;
}

}  // namespace tfq::ref
