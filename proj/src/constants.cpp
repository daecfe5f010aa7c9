#include "tfq/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace tfq {

double babenko(const Exponent& p) {
    if (p.is_inf() || p.value() == 1.0) return 1.0;
    const double pv = p.value();
    const double pc = p.conj().value();
    // log-space keeps the large-p evaluations stable
    double lg = 0.5 * (std::log(pv) / pv - std::log(pc) / pc);
    return std::exp(lg);
}

double h_const(const Exponent& p, const Exponent& q, int d) {
    if (d < 1) throw std::invalid_argument("h_const: d must be >= 1");
    if (p.is_inf()) {
        if (q.value() < 1.0) throw std::invalid_argument("h_const: q out of range");
        return 1.0;
    }
    const double pv = p.value();
    const double qv = q.is_inf() ? std::numeric_limits<double>::infinity() : q.value();
    if (pv < 2.0) throw std::invalid_argument("h_const: p must be >= 2");
    if (q.is_inf()) throw std::invalid_argument("h_const: q = inf requires p = inf");
    const double tol = 1e-12;
    if (q.recip() > p.conj().recip() + tol || qv > pv * (1.0 + tol))
        throw std::invalid_argument("h_const: (p,q) outside p' <= q <= p");
    const double dd = static_cast<double>(d);
    double val = pow00(qv / pv, dd / pv);
    val *= pow00(pv - qv, (pv - qv) * dd / (2.0 * pv * qv));
    val *= pow00(qv * pv - pv - qv, (qv * pv - pv - qv) * dd / (2.0 * pv * qv));
    val /= pow00(qv - 1.0, (qv - 1.0) * dd / (2.0 * qv));
    val /= pow00(pv - 2.0, (pv - 2.0) * dd / (2.0 * pv));
    return val;
}

double c_const(const Exponent& p, const Exponent& q, int d) {
    const double dd = static_cast<double>(d);
    double factor = p.is_inf() ? std::pow(2.0, dd) : std::pow(2.0, (p.value() - 2.0) * dd / p.value());
    return factor * h_const(p, q, d);
}

bool wigner_bounded(const Exponent& r, const Exponent& s, const Exponent& p) {
    if (!recip_close(s.recip(), r.conj().recip())) return false;
    if (p.value() < 2.0 && !p.is_inf()) return false;
    return r.recip() <= p.conj().recip() + 1e-12 && p.recip() <= r.recip() + 1e-12;
}

double loc_norm_bound(const Exponent& q, int d, double nphi, double npsi, double na) {
    if (nphi < 0.0 || npsi < 0.0 || na < 0.0)
        throw std::invalid_argument("loc_norm_bound: norms must be nonnegative");
    Exponent qc = q.conj();
    double factor;
    if (qc.is_inf())
        factor = 1.0;  // (1/q')^{1/q'} = 1 at q = 1
    else
        factor = std::pow(1.0 / qc.value(), static_cast<double>(d) / qc.value());
    return factor * nphi * npsi * na;
}

double cohen_norm_bound(const Exponent& r, const Exponent& s, const Exponent& q, const Exponent& p, int d) {
    if (q.value() < 1.0 || (!q.is_inf() && q.value() > 2.0) || q.is_inf())
        throw std::invalid_argument("cohen_norm_bound: q must lie in [1,2]");
    if (!recip_close(r.recip() + s.recip(), 1.0 + q.recip()))
        throw std::invalid_argument("cohen_norm_bound: 1/r + 1/s = 1 + 1/q violated");
    Exponent qc = q.conj();
    if (p.recip() > q.recip() + 1e-12 || qc.recip() > p.recip() + 1e-12)
        throw std::invalid_argument("cohen_norm_bound: p outside [q, q']");
    double a = babenko(r) * babenko(s) * babenko(qc);
    return std::pow(a, static_cast<double>(d)) * c_const(qc, p, d);
}

}  // namespace tfq
