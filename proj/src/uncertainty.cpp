#include "tfq/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tfq/constants.hpp"

namespace tfq {

namespace {

double l2_norm(const Signal& f) { return lp_norm(f, Exponent(2.0)); }

// chi_S * g by direct zero-padded quadrature, g given by closed-form Gaussian
// phi_mu (L^1-normalized).
Signal conv_indicator_gaussian(const MeasurableSet& S, double mu) {
    const Grid& g = S.grid;
    const int n = g.n();
    Signal out(g);
    const double amp = std::sqrt(mu);
    for (int t = 0; t < n; ++t) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) {
            if (!S.mask[l]) continue;
            double d = (static_cast<double>(t) - l) * g.dx();
            acc += amp * std::exp(-kPi * mu * d * d);
        }
        out.v[t] = acc * g.dx();
    }
    return out;
}

// chi_S * G with G sampled on the same axis (zero-padded).
Signal conv_indicator_samples(const MeasurableSet& S, const Signal& G) {
    const Grid& g = S.grid;
    const int n = g.n();
    const long q = g.offset();
    Signal out(g);
    for (int t = 0; t < n; ++t) {
        cd acc(0.0, 0.0);
        for (int l = 0; l < n; ++l) {
            if (!S.mask[l]) continue;
            long m = static_cast<long>(t) - l - q;  // index of (x_t - x_l) on the axis
            if (m < 0 || m >= n) continue;
            acc += G.v[static_cast<std::size_t>(m)];
        }
        out.v[t] = acc * g.dx();
    }
    return out;
}

double sup_abs(const Signal& f) {
    double m = 0.0;
    for (const cd& z : f.v) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace

double epsilon_concentration(const Signal& f, const MeasurableSet& U) {
    if (f.grid != U.grid) throw std::invalid_argument("epsilon_concentration: grid mismatch");
    double total = 0.0, outside = 0.0;
    for (std::size_t i = 0; i < f.v.size(); ++i) {
        double a2 = std::norm(f.v[i]);
        total += a2;
        if (!U.mask[i]) outside += a2;
    }
    if (total <= 0.0) throw std::invalid_argument("epsilon_concentration: zero signal");
    return std::sqrt(outside / total);
}

EpsilonData measured_epsilons_data(const Signal& f, const MeasurableSet& T, const MeasurableSet& Omega,
                                   double lambda1, double lambda2) {
    if (f.grid != T.grid) throw std::invalid_argument("measured_epsilons: T grid mismatch");
    if (Omega.grid != f.grid.dual()) throw std::invalid_argument("measured_epsilons: Omega must live on the dual grid");
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) throw std::invalid_argument("measured_epsilons: lambdas must be positive");
    const double nf = l2_norm(f);
    if (nf <= 0.0) throw std::invalid_argument("measured_epsilons: zero signal");

    EpsilonData out;
    out.F1 = conv_indicator_gaussian(T, 2.0 * lambda1);
    out.F2 = conv_indicator_gaussian(Omega, 2.0 / lambda2);

    // ||L1 f||_2 = ||F1 f||_2; ||L2 f||_2 = ||F2 fhat||_2 (Parseval)
    Signal l1f(f.grid);
    for (std::size_t i = 0; i < f.v.size(); ++i) l1f.v[i] = out.F1.v[i] * f.v[i];
    Signal fhat = spectrum(f);
    Signal l2f(fhat.grid);
    for (std::size_t i = 0; i < fhat.v.size(); ++i) l2f.v[i] = out.F2.v[i] * fhat.v[i];

    double r1 = lp_norm(l1f, 2.0) / nf;
    double r2 = lp_norm(l2f, 2.0) / nf;
    out.eps_t = std::sqrt(std::max(0.0, 1.0 - r1 * r1));
    out.eps_omega = std::sqrt(std::max(0.0, 1.0 - r2 * r2));
    return out;
}

std::pair<double, double> measured_epsilons(const Signal& f, const MeasurableSet& T,
                                            const MeasurableSet& Omega, double lambda1, double lambda2) {
    EpsilonData d = measured_epsilons_data(f, T, Omega, lambda1, lambda2);
    return {d.eps_t, d.eps_omega};
}

double ds_classical_bound(double eps_t, double eps_omega) {
    if (eps_t < 0.0 || eps_omega < 0.0) throw std::invalid_argument("ds_classical_bound: negative epsilon");
    if (eps_t + eps_omega > 1.0) throw std::invalid_argument("ds_classical_bound: eps_t + eps_omega > 1");
    double base = 1.0 - eps_t - eps_omega;
    return base * base;
}

double ds_bound_at(double r, double eps_t, double eps_omega, int d) {
    if (r < 1.0) throw std::invalid_argument("ds_bound_at: r must be >= 1");
    if (eps_t < 0.0 || eps_omega < 0.0 || eps_t + eps_omega > 1.0)
        throw std::invalid_argument("ds_bound_at: epsilons must be nonnegative with sum <= 1");
    const double dd = static_cast<double>(d);
    const double base = 1.0 - eps_t - eps_omega;
    if (base == 0.0) return 0.0;
    if (r == 1.0) return base * base;  // the classical square, exactly
    // log-space: (r-1)^{r-1} -> 1 as r -> 1
    double lg = 2.0 * r * std::log(base);
    lg -= dd * std::log(2.0 * r);
    lg += 0.5 * dd * ((r + 1.0) * std::log(r + 1.0) - (r > 1.0 ? (r - 1.0) * std::log(r - 1.0) : 0.0));
    return std::exp(lg);
}

DsOptimum ds_bound_optimize(double eps_t, double eps_omega, int d, double r_max) {
    if (r_max < 1.0) throw std::invalid_argument("ds_bound_optimize: r_max must be >= 1");
    auto value = [&](double r) { return ds_bound_at(r, eps_t, eps_omega, d); };

    const int pts = 200;
    const double lmax = std::log(r_max);
    int best = 0;
    double best_val = value(1.0);
    std::vector<double> rs(pts);
    for (int i = 0; i < pts; ++i) {
        rs[i] = std::exp(lmax * static_cast<double>(i) / (pts - 1));
        double v = value(rs[i]);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double lo = rs[std::max(0, best - 1)];
    double hi = rs[std::min(pts - 1, best + 1)];

    // golden-section maximization to width 1e-9
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = value(x1), f2 = value(x2);
    while (b - a > 1e-9) {
        if (f1 >= f2) {  // ties toward smaller r
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = value(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = value(x2);
        }
    }
    double r_star = 0.5 * (a + b);
    double v_star = value(r_star);
    DsOptimum res;
    if (v_star > best_val) {  // ties stay at the smaller coarse maximizer
        res.r_star = r_star;
        res.bound = v_star;
    } else {
        res.r_star = rs[best];
        res.bound = best_val;
    }
    res.boundary = res.r_star >= r_max * (1.0 - 1e-9) || best == pts - 1;
    return res;
}

CohenFG cohen_FG(const CohenKernel& sigma, const MeasurableSet& T, const MeasurableSet& Omega) {
    const Grid& g = T.grid;
    if (Omega.grid != g.dual()) throw std::invalid_argument("cohen_FG: Omega must live on the dual grid");
    TFFunction K = sample_kernel(sigma, g);
    const int n = g.n();
    const long q = g.offset();
    const Grid dual = g.dual();

    CohenFG out;
    out.G1 = Signal(g);
    out.G2 = Signal(dual);

    // G1(t) = dw * sum_k conj(sigma(-x_t, w_k))
    for (int t = 0; t < n; ++t) {
        long rx = ((-t - 2 * q) % n + n) % n;
        cd acc(0.0, 0.0);
        for (int ki = 0; ki < n; ++ki) acc += std::conj(K.at(static_cast<std::size_t>(rx), ki));
        out.G1.v[t] = acc * dual.cell();
    }
    // G2(xi) = dx * sum_l conj(sigma(x_l, -w_xi))
    for (int ki = 0; ki < n; ++ki) {
        long rk = ((n - ki) % n + n) % n;
        cd acc(0.0, 0.0);
        for (int l = 0; l < n; ++l) acc += std::conj(K.at(l, static_cast<std::size_t>(rk)));
        out.G2.v[ki] = acc * g.cell();
    }
    out.F1 = conv_indicator_samples(T, out.G1);
    out.F2 = conv_indicator_samples(Omega, out.G2);
    return out;
}

namespace {

// Rebuilds a measurable set on a coarser grid by sampling cell centers.
MeasurableSet resample_set(const MeasurableSet& S, const Grid& target) {
    MeasurableSet out(target);
    const Grid& src = S.grid;
    for (int t = 0; t < target.n(); ++t) {
        double x = target.x(t);
        long j = std::lround((x - src.x0()) / src.dx());
        if (j >= 0 && j < src.n()) out.mask[t] = S.mask[static_cast<std::size_t>(j)];
    }
    return out;
}

// Operator-norm hypothesis of the Cohen UP, checked on a reduced grid.
std::pair<double, double> opnorm_hypothesis(const CohenKernel& sigma, const MeasurableSet& T,
                                            const MeasurableSet& Omega) {
    const Grid& g = T.grid;
    Grid rg = g;
    MeasurableSet rT = T, rOmega = Omega;
    if (g.n() > 128) {
        double dxr = g.length() / 128.0;
        double x0r = static_cast<double>(std::lround(g.x0() / dxr)) * dxr;
        rg = Grid(g.dim(), 128, dxr, x0r);
        rT = resample_set(T, rg);
        rOmega = resample_set(Omega, rg.dual());
    }
    CohenKernel rsigma = sigma;
    if (sigma.variant == CohenKernel::Variant::sampled && rg != g)
        throw std::invalid_argument("cohen_up_bound: sampled kernels need grid size <= 128 for the norm check");

    const int n = rg.n();
    TFFunction aT(rg), aO(rg);
    for (int xi = 0; xi < n; ++xi)
        for (int ki = 0; ki < n; ++ki) {
            aT.at(xi, ki) = rT.mask[xi] ? cd(1.0, 0.0) : cd(0.0, 0.0);
            aO.at(xi, ki) = rOmega.mask[ki] ? cd(1.0, 0.0) : cd(0.0, 0.0);
        }
    OperatorMatrix Mt = cohen_op_matrix(aT, rsigma);
    OperatorMatrix Mo = cohen_op_matrix(aO, rsigma);
    return {operator_norm(Mt).value, operator_norm(Mo).value};
}

}  // namespace

ConcentrationReport cohen_up_bound(const CohenKernel& sigma, const MeasurableSet& T,
                                   const MeasurableSet& Omega, double eps_t, double eps_omega, int d) {
    ConcentrationReport rep;
    rep.pipeline = "cohen";
    rep.eps_t = eps_t;
    rep.eps_omega = eps_omega;
    rep.measure_t = T.measure();
    rep.measure_omega = Omega.measure();
    rep.product_t_omega = rep.measure_t * rep.measure_omega;
    rep.flag_eps_sum = eps_t >= 0.0 && eps_omega >= 0.0 && eps_t + eps_omega <= 1.0;

    CohenFG fg = cohen_FG(sigma, T, Omega);
    rep.f1_sup = sup_abs(fg.F1);
    rep.f2_sup = sup_abs(fg.F2);
    const double grace = 1e-9;
    bool f_real_nonneg = true;
    for (const cd& z : fg.F1.v)
        if (std::abs(z.imag()) > grace || z.real() < -grace) f_real_nonneg = false;
    for (const cd& z : fg.F2.v)
        if (std::abs(z.imag()) > grace || z.real() < -grace) f_real_nonneg = false;
    bool dirac = sigma.variant == CohenKernel::Variant::dirac;
    rep.flag_f_sup = !dirac && f_real_nonneg && rep.f1_sup <= 1.0 + grace && rep.f2_sup <= 1.0 + grace;

    auto norms = opnorm_hypothesis(sigma, T, Omega);
    rep.opnorm_t = norms.first;
    rep.opnorm_omega = norms.second;
    rep.flag_min_opnorm = std::min(norms.first, norms.second) <= 1.0 + grace;

    // equal-exponent search: bound = [ (1-e) / (K^d ||G1||_p ||G2||_p) ]^s
    const SearchLattice lat;
    rep.lattice = lat;
    rep.bound_classical = rep.flag_eps_sum ? ds_classical_bound(eps_t, eps_omega) : 0.0;

    const double e_sum = eps_t + eps_omega;
    if (rep.flag_eps_sum) {
        const double dd = static_cast<double>(d);
        std::vector<double> ps(lat.p_points);
        for (int i = 0; i < lat.p_points; ++i)
            ps[i] = std::exp(std::log(lat.p_max) * static_cast<double>(i) / (lat.p_points - 1));
        std::vector<double> g1n(lat.p_points), g2n(lat.p_points);
        for (int i = 0; i < lat.p_points; ++i) {
            g1n[i] = lp_norm(fg.G1, Exponent(ps[i]));
            g2n[i] = lp_norm(fg.G2, Exponent(ps[i]));
        }
        auto bound_at = [&](double r, int pi) -> double {
            double inv_s = 1.0 + 0.5 / r - 1.0 / ps[pi];
            if (inv_s <= 0.0 || inv_s > 1.0 + 1e-12) return -1.0;
            double s = 1.0 / inv_s;
            double K = babenko(Exponent(s)) * babenko(Exponent(s)) * babenko(Exponent(ps[pi])) *
                       babenko(Exponent(ps[pi])) * babenko(Exponent(2.0 * r / (r + 1.0)));
            double a2 = babenko(Exponent(2.0 * r / (2.0 * r - 1.0)));
            K *= a2 * a2;
            double denom = std::pow(K, dd) * g1n[pi] * g2n[pi];
            if (!(denom > 0.0) || !std::isfinite(denom)) return -1.0;
            double base = (1.0 - e_sum) / denom;
            if (base <= 0.0) return 0.0;
            double v = std::pow(base, s);
            return std::isfinite(v) ? v : -1.0;
        };

        double best = -1.0, best_r = 1.0;
        int best_pi = 0;
        for (int ri = 0; ri < lat.r_points; ++ri) {
            double r = std::exp(std::log(lat.r_max) * static_cast<double>(ri) / (lat.r_points - 1));
            for (int pi = 0; pi < lat.p_points; ++pi) {
                double v = bound_at(r, pi);
                if (v > best) {
                    best = v;
                    best_r = r;
                    best_pi = pi;
                }
            }
        }
        // golden refinement in r at the winning p
        double a = std::max(1.0, best_r / std::exp(std::log(lat.r_max) / (lat.r_points - 1)));
        double b = std::min(lat.r_max, best_r * std::exp(std::log(lat.r_max) / (lat.r_points - 1)));
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = bound_at(x1, best_pi), f2 = bound_at(x2, best_pi);
        while (b - a > 1e-9) {
            if (f1 >= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - gr * (b - a);
                f1 = bound_at(x1, best_pi);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gr * (b - a);
                f2 = bound_at(x2, best_pi);
            }
        }
        double rr = 0.5 * (a + b);
        double vr = bound_at(rr, best_pi);
        if (vr > best) {
            best = vr;
            best_r = rr;
        }
        rep.bound_improved = std::max(0.0, best);
        rep.r_star = best_r;
        rep.p_star = ps[best_pi];
        double inv_s = 1.0 + 0.5 / best_r - 1.0 / ps[best_pi];
        rep.s_star = inv_s > 0.0 ? 1.0 / inv_s : 0.0;
        rep.boundary = best_r >= lat.r_max * (1.0 - 1e-9);
    }

    rep.applicable = rep.flag_eps_sum && rep.flag_f_sup && rep.flag_min_opnorm;
    rep.satisfied = rep.applicable &&
                    rep.product_t_omega >= std::max(rep.bound_classical, rep.bound_improved) - 1e-12;
    return rep;
}

ConcentrationReport up_check(const Signal& f, const MeasurableSet& T, const MeasurableSet& Omega,
                             double lambda1, double lambda2, const std::optional<CohenKernel>& sigma) {
    if (sigma) {
        CohenFG fg = cohen_FG(*sigma, T, Omega);
        const double nf = l2_norm(f);
        if (nf <= 0.0) throw std::invalid_argument("up_check: zero signal");
        Signal l1f(f.grid);
        for (std::size_t i = 0; i < f.v.size(); ++i) l1f.v[i] = fg.F1.v[i] * f.v[i];
        Signal fhat = spectrum(f);
        Signal l2f(fhat.grid);
        for (std::size_t i = 0; i < fhat.v.size(); ++i) l2f.v[i] = fg.F2.v[i] * fhat.v[i];
        double r1 = lp_norm(l1f, 2.0) / nf;
        double r2 = lp_norm(l2f, 2.0) / nf;
        double et = std::sqrt(std::max(0.0, 1.0 - r1 * r1));
        double eo = std::sqrt(std::max(0.0, 1.0 - r2 * r2));
        return cohen_up_bound(*sigma, T, Omega, et, eo, f.grid.dim());
    }

    EpsilonData data = measured_epsilons_data(f, T, Omega, lambda1, lambda2);
    ConcentrationReport rep;
    rep.pipeline = "localization";
    rep.eps_t = data.eps_t;
    rep.eps_omega = data.eps_omega;
    rep.measure_t = T.measure();
    rep.measure_omega = Omega.measure();
    rep.product_t_omega = rep.measure_t * rep.measure_omega;
    rep.flag_eps_sum = data.eps_t + data.eps_omega <= 1.0;
    rep.f1_sup = sup_abs(data.F1);
    rep.f2_sup = sup_abs(data.F2);
    const double grace = 1e-9;
    rep.flag_f_sup = rep.f1_sup <= 1.0 + grace && rep.f2_sup <= 1.0 + grace;
    // L1, L2 are a multiplication operator and a Fourier multiplier: their
    // norms are the sups of the real nonnegative symbols.
    rep.opnorm_t = rep.f1_sup;
    rep.opnorm_omega = rep.f2_sup;
    rep.flag_min_opnorm = std::min(rep.opnorm_t, rep.opnorm_omega) <= 1.0 + grace;
    if (rep.flag_eps_sum) {
        rep.bound_classical = ds_classical_bound(data.eps_t, data.eps_omega);
        DsOptimum opt = ds_bound_optimize(data.eps_t, data.eps_omega, f.grid.dim());
        rep.bound_improved = opt.bound;
        rep.r_star = opt.r_star;
        rep.boundary = opt.boundary;
    }
    rep.applicable = rep.flag_eps_sum && rep.flag_f_sup && rep.flag_min_opnorm;
    rep.satisfied = rep.applicable &&
                    rep.product_t_omega >= std::max(rep.bound_classical, rep.bound_improved) - 1e-12;
    return rep;
}

ScalingFit scaling_experiment(const Exponent& q, const Exponent& p, const std::vector<double>& lambdas,
                              const Grid& grid) {
    if (lambdas.size() < 2) throw std::invalid_argument("scaling_experiment: need at least two lambdas");
    double lo = *std::min_element(lambdas.begin(), lambdas.end());
    double hi = *std::max_element(lambdas.begin(), lambdas.end());
    if (!(lo > 0.0) || hi == lo) throw std::invalid_argument("scaling_experiment: degenerate lambda list");

    Signal base = gaussian(GaussianKind::phi_l2, 1.0, grid);
    ScalingFit fit;
    fit.theory = -2.0 * grid.dim() * (0.5 - q.recip());
    for (double lam : lambdas) {
        Signal fl = dilate(base, lam);
        double n2 = l2_norm(fl);
        Signal psi(grid);
        for (std::size_t i = 0; i < fl.v.size(); ++i) psi.v[i] = fl.v[i] / n2;
        TFFunction W = wigner(psi, psi);
        double rho = lp_norm(W, p) / std::pow(lp_norm(psi, q), 2.0);
        fit.points.emplace_back(lam, rho);
    }
    // least squares on (log lambda, log rho)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(fit.points.size());
    for (auto& [lam, rho] : fit.points) {
        double X = std::log(lam), Y = std::log(rho);
        sx += X;
        sy += Y;
        sxx += X * X;
        sxy += X * Y;
    }
    fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return fit;
}

ScalingFit scaling_experiment(const Exponent& q, const Exponent& p, const std::vector<double>& lambdas) {
    return scaling_experiment(q, p, lambdas, make_grid(512, 1.0 / 64.0));
}

}  // namespace tfq
