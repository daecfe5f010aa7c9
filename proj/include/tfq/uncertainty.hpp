// epsilon-concentration, the classical and improved Donoho-Stark bounds with
// scalar maximization over r, the Cohen-class uncertainty bound with
// hypothesis verification, and the dilation scaling experiment.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tfq/operators.hpp"

namespace tfq {

// (integral of |f|^2 outside U)^{1/2} / ||f||_2.
double epsilon_concentration(const Signal& f, const MeasurableSet& U);

// The multiplication / Fourier-multiplier pair behind the localization UP:
// F1 = chi_T * phi_{2 l1} on the x axis, F2 = chi_Omega * phi_{2/l2} on the
// frequency axis, and the minimal epsilons with ||L_j f||^2 = (1-eps^2)||f||^2.
struct EpsilonData {
    Signal F1;          // on the spatial grid
    Signal F2;          // on the dual grid
    double eps_t = 0.0;
    double eps_omega = 0.0;
};
EpsilonData measured_epsilons_data(const Signal& f, const MeasurableSet& T, const MeasurableSet& Omega,
                                   double lambda1, double lambda2);
std::pair<double, double> measured_epsilons(const Signal& f, const MeasurableSet& T,
                                            const MeasurableSet& Omega, double lambda1, double lambda2);

// (1 - eps_t - eps_omega)^2; rejects eps_t + eps_omega > 1.
double ds_classical_bound(double eps_t, double eps_omega);

// (1-e)^{2r} (2r)^{-d} ((r+1)^{r+1}/(r-1)^{r-1})^{d/2}, with (r-1)^{r-1} = 1
// at r = 1.
double ds_bound_at(double r, double eps_t, double eps_omega, int d);

struct DsOptimum {
    double r_star = 1.0;
    double bound = 0.0;
    bool boundary = false;  // maximizer sits at r_max: supremum possibly at infinity
};
// Coarse 200-point log grid over [1, r_max], golden-section refinement to
// 1e-9 in r, ties toward smaller r.
DsOptimum ds_bound_optimize(double eps_t, double eps_omega, int d, double r_max = 1e3);

// Marginals G1(t) = int conj(sigma(-t, w)) dw, G2(xi) = int conj(sigma(x, -xi)) dx,
// and the smoothed indicators F1 = chi_T * G1, F2 = chi_Omega * G2.
struct CohenFG {
    Signal G1;  // spatial grid
    Signal G2;  // dual grid
    Signal F1;
    Signal F2;
};
CohenFG cohen_FG(const CohenKernel& sigma, const MeasurableSet& T, const MeasurableSet& Omega);

struct SearchLattice {
    double r_min = 1.0, r_max = 100.0;
    int r_points = 60;
    double p_min = 1.0, p_max = 20.0;
    int p_points = 40;
};

struct ConcentrationReport {
    double eps_t = 0.0, eps_omega = 0.0;
    double measure_t = 0.0, measure_omega = 0.0;
    double bound_classical = 0.0, bound_improved = 0.0;
    double r_star = 1.0;
    bool flag_eps_sum = false;   // eps_t + eps_omega <= 1
    bool flag_f_sup = false;     // ||F_j||_inf <= 1 (1e-9 grace)
    bool flag_min_opnorm = false;
    double product_t_omega = 0.0;
    bool satisfied = false;
    bool applicable = false;     // all hypothesis flags hold
    bool boundary = false;
    double s_star = 0.0, p_star = 0.0;  // Cohen pipeline exponents (0 when unused)
    double f1_sup = 0.0, f2_sup = 0.0;
    double opnorm_t = 0.0, opnorm_omega = 0.0;
    std::string pipeline;        // "localization" or "cohen"
    SearchLattice lattice;
};

// Cohen-class uncertainty bound: equal-exponent search over (r, p) with s
// from 1/s + 1/p = 1 + 1/2r, hypothesis checks included. The operator-norm
// hypothesis is verified on a reduced grid (n <= 128).
ConcentrationReport cohen_up_bound(const CohenKernel& sigma, const MeasurableSet& T,
                                   const MeasurableSet& Omega, double eps_t, double eps_omega, int d);

// Full `up check` pipeline: measure epsilons through the operator pair, then
// bound. Without a kernel this is the localization route with windows
// Phi_{lambda1}, Phi_{lambda2}; with a kernel it is the Cohen route.
ConcentrationReport up_check(const Signal& f, const MeasurableSet& T, const MeasurableSet& Omega,
                             double lambda1, double lambda2,
                             const std::optional<CohenKernel>& sigma = std::nullopt);

struct ScalingFit {
    double slope = 0.0;
    double theory = 0.0;
    std::vector<std::pair<double, double>> points;  // (lambda, rho)
};
// rho(l) = ||Wig(f_l/||f_l||_2)||_p / ||f_l/||f_l||_2||_q^2 with f_l = Phi_1(l x);
// returns the least-squares slope of log rho against log lambda. The grid must
// resolve the narrowest dilate: the overload picks n=512, dx=1/64, adequate
// for lambda <= 8.
ScalingFit scaling_experiment(const Exponent& q, const Exponent& p, const std::vector<double>& lambdas,
                              const Grid& grid);
ScalingFit scaling_experiment(const Exponent& q, const Exponent& p, const std::vector<double>& lambdas);

}  // namespace tfq
