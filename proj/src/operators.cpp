#include "tfq/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tfq/fft.hpp"

namespace tfq {

namespace {

long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

constexpr std::size_t kDenseCap = 512;
constexpr int kDirectCap = 128;

void require_dense(const Grid& g, const char* op) {
    if (g.size() > kDenseCap)
        throw std::invalid_argument(std::string(op) + ": dense operators are capped at grid size 512");
    if (g.dim() != 1) throw std::invalid_argument(std::string(op) + ": d = 1 required");
}

// Upsample the symbol along x: columns indexed by frequency, rows by the
// half-step lattice.
std::vector<std::vector<cd>> upsample_symbol_x(const TFFunction& b) {
    const int n = b.grid.n();
    std::vector<std::vector<cd>> b2(static_cast<std::size_t>(n));
    std::vector<cd> col(static_cast<std::size_t>(n));
    for (int ki = 0; ki < n; ++ki) {
        for (int xi = 0; xi < n; ++xi) col[xi] = b.at(xi, ki);
        b2[ki] = upsample2(col);
    }
    return b2;
}

// Detects symbols constant along one axis (relative spread below 1e-13).
Provenance detect_provenance(const TFFunction& b) {
    const int n = b.grid.n();
    double scale = 0.0;
    for (const cd& z : b.v) scale = std::max(scale, std::abs(z));
    const double tol = 1e-13 * std::max(scale, 1e-300);
    bool const_w = true, const_x = true;
    for (int xi = 0; xi < n && const_w; ++xi)
        for (int ki = 1; ki < n; ++ki)
            if (std::abs(b.at(xi, ki) - b.at(xi, 0)) > tol) {
                const_w = false;
                break;
            }
    for (int ki = 0; ki < n && const_x; ++ki)
        for (int xi = 1; xi < n; ++xi)
            if (std::abs(b.at(xi, ki) - b.at(0, ki)) > tol) {
                const_x = false;
                break;
            }
    Provenance p;
    if (const_w) {
        p.kind = Provenance::Kind::multiplication;
        p.description = "weyl multiplication symbol";
        p.multiplier.resize(n);
        for (int xi = 0; xi < n; ++xi) p.multiplier[xi] = b.at(xi, 0);
    } else if (const_x) {
        p.kind = Provenance::Kind::fourier_multiplier;
        p.description = "weyl fourier-multiplier symbol";
        p.multiplier.resize(n);
        for (int ki = 0; ki < n; ++ki) p.multiplier[ki] = b.at(0, ki);
    } else {
        p.kind = Provenance::Kind::generic;
        p.description = "weyl";
    }
    return p;
}

}  // namespace

OperatorMatrix::OperatorMatrix(const Grid& g) : grid(g), m(g.size() * g.size(), cd(0.0, 0.0)) {
    require_dense(g, "OperatorMatrix");
}

OperatorMatrix make_identity(const Grid& grid) {
    OperatorMatrix M(grid);
    const double inv = 1.0 / grid.cell();
    for (std::size_t t = 0; t < M.dim(); ++t) M.at(t, t) = cd(inv, 0.0);
    M.prov.kind = Provenance::Kind::identity;
    M.prov.description = "identity";
    return M;
}

OperatorMatrix weyl_matrix(const TFFunction& b) {
    require_dense(b.grid, "weyl_matrix");
    const Grid& g = b.grid;
    const int n = g.n();
    const long n2 = 2 * n;
    const double dw = g.dw();

    const auto b2 = upsample_symbol_x(b);

    // V[s][delta] = dw * sum_k b2[k][s] e^{2 pi i delta k / n}: one inverse
    // FFT per half-step midpoint s.
    const Fft plan(static_cast<std::size_t>(n));
    std::vector<std::vector<cd>> table(static_cast<std::size_t>(n2));
#pragma omp parallel for schedule(static)
    for (long s = 0; s < n2; ++s) {
        std::vector<cd> row(static_cast<std::size_t>(n));
        for (int ki = 0; ki < n; ++ki) {
            long k = ki - n / 2;
            row[static_cast<std::size_t>(mod(k, n))] = b2[ki][s];
        }
        plan.inverse(row);
        for (auto& z : row) z *= static_cast<double>(n) * dw;
        table[s] = std::move(row);
    }

    OperatorMatrix M(g);
#pragma omp parallel for schedule(static)
    for (long t = 0; t < n; ++t) {
        for (long u = 0; u < n; ++u) {
            long d = t - u;
            long dwrap = mod(d + n / 2, n) - n / 2;
            long nu = (d - dwrap) / n;
            std::size_t delta = static_cast<std::size_t>(mod(d, n));
            cd val;
            if (dwrap == -n / 2)
                val = 0.5 * (table[mod(t + u, n2)][delta] + table[mod(t + u + n, n2)][delta]);
            else
                val = table[mod(t + u - nu * n, n2)][delta];
            M.at(t, u) = val;
        }
    }
    M.prov = detect_provenance(b);
    return M;
}

OperatorMatrix schwartz_kernel_matrix(const TFFunction& b) {
    require_dense(b.grid, "schwartz_kernel_matrix");
    const Grid& g = b.grid;
    const int n = g.n();
    const long n2 = 2 * n;
    const long q = g.offset();

    // F2^{-1}[b]: inverse physical DFT along the frequency axis, row by row,
    // then 2x interpolation along x.
    const Grid dual = g.dual();
    std::vector<std::vector<cd>> rows(static_cast<std::size_t>(n));
    for (int xi = 0; xi < n; ++xi) {
        Signal row(dual);
        for (int ki = 0; ki < n; ++ki) row.v[ki] = b.at(xi, ki);
        rows[xi] = inverse_spectrum(row, g).v;
    }
    // transpose to tau-major columns and upsample along x
    std::vector<std::vector<cd>> k2(static_cast<std::size_t>(n));
    std::vector<cd> col(static_cast<std::size_t>(n));
    for (int m_ = 0; m_ < n; ++m_) {
        for (int xi = 0; xi < n; ++xi) col[xi] = rows[xi][m_];
        k2[m_] = upsample2(col);
    }

    OperatorMatrix M(g);
    for (long t = 0; t < n; ++t) {
        for (long u = 0; u < n; ++u) {
            long d = t - u;
            long dwrap = mod(d + n / 2, n) - n / 2;
            long nu = (d - dwrap) / n;
            std::size_t tau = static_cast<std::size_t>(mod(dwrap - q, n));
            cd val;
            if (dwrap == -n / 2)
                val = 0.5 * (k2[tau][mod(t + u, n2)] + k2[tau][mod(t + u + n, n2)]);
            else
                val = k2[tau][mod(t + u - nu * n, n2)];
            M.at(t, u) = val;
        }
    }
    M.prov.kind = Provenance::Kind::generic;
    M.prov.description = "schwartz kernel";
    return M;
}

OperatorMatrix localization_matrix(const TFFunction& a, const Signal& phi, const Signal& psi, LocPath path) {
    require_dense(a.grid, "localization_matrix");
    if (phi.grid != a.grid || psi.grid != a.grid)
        throw std::invalid_argument("localization_matrix: grid mismatch");
    const Grid& g = a.grid;
    const int n = g.n();

    if (path == LocPath::via_weyl) {
        // Weyl symbol of the rank-one sum: b = a * Wig(psi, phi). (For even
        // windows this coincides with the reflected form.)
        TFFunction b = convolve_tf_circular(a, wigner(psi, phi));
        OperatorMatrix M = weyl_matrix(b);
        M.prov.description = "localization via weyl";
        return M;
    }

    if (n > kDirectCap)
        throw std::invalid_argument("localization_matrix: direct path capped at n = 128");
    const long q = g.offset();
    const double dw = g.dw();

    // A[l][delta] = dw * sum_k a[l,k] e^{2 pi i delta k/n}
    const Fft plan(static_cast<std::size_t>(n));
    std::vector<std::vector<cd>> A(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (long l = 0; l < n; ++l) {
        std::vector<cd> row(static_cast<std::size_t>(n));
        for (int ki = 0; ki < n; ++ki) {
            long k = ki - n / 2;
            row[static_cast<std::size_t>(mod(k, n))] = a.at(l, ki);
        }
        plan.inverse(row);
        for (auto& z : row) z *= static_cast<double>(n) * dw;
        A[l] = std::move(row);
    }

    OperatorMatrix M(g);
#pragma omp parallel for schedule(static)
    for (long t = 0; t < n; ++t) {
        for (long u = 0; u < n; ++u) {
            cd acc(0.0, 0.0);
            std::size_t delta = static_cast<std::size_t>(mod(t - u, n));
            for (long l = 0; l < n; ++l)
                acc += psi.v[mod(t - l - q, n)] * std::conj(phi.v[mod(u - l - q, n)]) * A[l][delta];
            M.at(t, u) = g.dx() * acc;
        }
    }
    M.prov.kind = Provenance::Kind::generic;
    M.prov.description = "localization direct";
    return M;
}

OperatorMatrix cohen_op_matrix(const TFFunction& a, const CohenKernel& sigma) {
    require_dense(a.grid, "cohen_op_matrix");
    if (sigma.variant == CohenKernel::Variant::dirac) {
        OperatorMatrix M = weyl_matrix(a);
        M.prov.description = "cohen dirac (= weyl)";
        return M;
    }
    TFFunction K = sample_kernel(sigma, a.grid);
    TFFunction b = convolve_tf_circular(a, reflect_conj(K));
    OperatorMatrix M = weyl_matrix(b);
    M.prov.description = "cohen";
    return M;
}

OperatorMatrix adjoint(const OperatorMatrix& M) {
    OperatorMatrix A(M.grid);
    const std::size_t N = M.dim();
    for (std::size_t t = 0; t < N; ++t)
        for (std::size_t u = 0; u < N; ++u) A.at(t, u) = std::conj(M.at(u, t));
    A.prov.kind = M.prov.kind;
    A.prov.description = "adjoint of " + M.prov.description;
    if (M.prov.kind == Provenance::Kind::multiplication ||
        M.prov.kind == Provenance::Kind::fourier_multiplier) {
        A.prov.multiplier.resize(M.prov.multiplier.size());
        for (std::size_t i = 0; i < M.prov.multiplier.size(); ++i)
            A.prov.multiplier[i] = std::conj(M.prov.multiplier[i]);
    }
    return A;
}

Signal apply_dense(const OperatorMatrix& M, const Signal& f) {
    if (f.grid != M.grid) throw std::invalid_argument("apply: grid mismatch");
    const std::size_t N = M.dim();
    Signal out(f.grid);
    const double cell = f.grid.cell();
#pragma omp parallel for schedule(static)
    for (long t = 0; t < static_cast<long>(N); ++t) {
        cd acc(0.0, 0.0);
        const cd* row = &M.m[static_cast<std::size_t>(t) * N];
        for (std::size_t u = 0; u < N; ++u) acc += row[u] * f.v[u];
        out.v[t] = acc * cell;
    }
    return out;
}

Signal apply(const OperatorMatrix& M, const Signal& f) {
    if (f.grid != M.grid) throw std::invalid_argument("apply: grid mismatch");
    switch (M.prov.kind) {
        case Provenance::Kind::identity:
            return f;
        case Provenance::Kind::multiplication: {
            Signal out(f.grid);
            for (std::size_t i = 0; i < f.v.size(); ++i) out.v[i] = M.prov.multiplier[i] * f.v[i];
            return out;
        }
        case Provenance::Kind::fourier_multiplier: {
            Signal F = spectrum(f);
            for (std::size_t i = 0; i < F.v.size(); ++i) F.v[i] *= M.prov.multiplier[i];
            return inverse_spectrum(F, f.grid);
        }
        case Provenance::Kind::generic:
            break;
    }
    return apply_dense(M, f);
}

namespace {

// Cyclic complex Jacobi for Hermitian matrices; returns the largest eigenvalue.
double jacobi_max_eigenvalue(std::vector<cd> A, std::size_t N) {
    auto at = [&](std::size_t i, std::size_t j) -> cd& { return A[i * N + j]; };
    double scale = 0.0;
    for (std::size_t i = 0; i < N; ++i) scale = std::max(scale, std::abs(at(i, i)));
    for (int sweep = 0; sweep < 40; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t qq = p + 1; qq < N; ++qq) off = std::max(off, std::abs(at(p, qq)));
        if (off <= 1e-14 * std::max(scale, 1e-300)) break;
        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t qq = p + 1; qq < N; ++qq) {
                cd apq = at(p, qq);
                double ab = std::abs(apq);
                if (ab <= 1e-300) continue;
                double app = at(p, p).real(), aqq = at(qq, qq).real();
                double tau = (aqq - app) / (2.0 * ab);
                double tt = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                         : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + tt * tt);
                double s = tt * c;
                cd u = apq / ab;  // e^{i phi}
                // columns: [vp, vq] <- [c vp - s conj(u) vq, s u vp + c vq]
                for (std::size_t i = 0; i < N; ++i) {
                    cd vip = at(i, p), viq = at(i, qq);
                    at(i, p) = c * vip - s * std::conj(u) * viq;
                    at(i, qq) = s * u * vip + c * viq;
                }
                // rows (conjugate transform)
                for (std::size_t j = 0; j < N; ++j) {
                    cd vpj = at(p, j), vqj = at(qq, j);
                    at(p, j) = c * vpj - s * u * vqj;
                    at(qq, j) = s * std::conj(u) * vpj + c * vqj;
                }
                scale = std::max({scale, std::abs(at(p, p)), std::abs(at(qq, qq))});
            }
        }
    }
    double mx = 0.0;
    for (std::size_t i = 0; i < N; ++i) mx = std::max(mx, at(i, i).real());
    return mx;
}

}  // namespace

OperatorNorm operator_norm(const OperatorMatrix& M) {
    const std::size_t N = M.dim();
    const double cell = M.grid.cell();
    // weighted action B = cell * M
    auto matvec = [&](const std::vector<cd>& x, std::vector<cd>& y, bool adj) {
        for (std::size_t t = 0; t < N; ++t) {
            cd acc(0.0, 0.0);
            if (!adj) {
                const cd* row = &M.m[t * N];
                for (std::size_t u = 0; u < N; ++u) acc += row[u] * x[u];
            } else {
                for (std::size_t u = 0; u < N; ++u) acc += std::conj(M.m[u * N + t]) * x[u];
            }
            y[t] = acc * cell;
        }
    };

    OperatorNorm res;
    std::vector<cd> v(N, cd(1.0, 0.0)), w(N), z(N);
    double nv = std::sqrt(static_cast<double>(N));
    for (auto& x : v) x /= nv;

    double lambda = 0.0;
    const int max_iter = 10000;
    for (int it = 1; it <= max_iter; ++it) {
        res.iterations = it;
        matvec(v, w, false);   // w = B v
        matvec(w, z, true);    // z = B* B v
        double nl = 0.0;
        for (const cd& x : w) nl += std::norm(x);  // Rayleigh: ||Bv||^2 for unit v
        lambda = nl;
        // residual ||(B*B) v - lambda v||: decides convergence at rel tol 1e-10
        double rnorm = 0.0;
        for (std::size_t i = 0; i < N; ++i) rnorm += std::norm(z[i] - lambda * v[i]);
        rnorm = std::sqrt(rnorm);
        double nz = 0.0;
        for (const cd& x : z) nz += std::norm(x);
        nz = std::sqrt(nz);
        if (nz <= 1e-300) {
            res.value = 0.0;
            res.converged = true;
            return res;
        }
        if (rnorm <= 1e-10 * std::max(lambda, 1e-300)) {
            res.converged = true;
            res.value = std::sqrt(lambda);
            return res;
        }
        for (std::size_t i = 0; i < N; ++i) v[i] = z[i] / nz;
    }

    if (N <= kDenseCap) {
        // B*B assembled once; Jacobi gives the exact top eigenvalue.
        std::vector<cd> A(N * N, cd(0.0, 0.0));
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) {
                cd acc(0.0, 0.0);
                for (std::size_t t = 0; t < N; ++t) acc += std::conj(M.m[t * N + i]) * M.m[t * N + j];
                A[i * N + j] = acc * cell * cell;
            }
        res.value = std::sqrt(std::max(0.0, jacobi_max_eigenvalue(std::move(A), N)));
        res.converged = true;
        res.used_fallback = true;
        return res;
    }
    res.value = std::sqrt(lambda);
    res.converged = false;
    return res;
}

}  // namespace tfq
