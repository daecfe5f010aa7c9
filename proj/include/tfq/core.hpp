// Basic scalar types shared by every module: complex samples and Lebesgue
// exponents in [1, inf] with conjugation.
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace tfq {

using cd = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Exponent p of an L^p norm. Infinity is a distinguished value: every
// formula branches on it instead of feeding HUGE_VAL through pow().
class Exponent {
public:
    Exponent() : v_(2.0) {}
    Exponent(double p) : v_(p) {  // NOLINT: implicit by design, p literals read naturally
        if (std::isnan(p) || p < 1.0)
            throw std::invalid_argument("Exponent: p must lie in [1, inf], got " + std::to_string(p));
    }

    static Exponent infinity() { return Exponent(std::numeric_limits<double>::infinity()); }

    double value() const { return v_; }
    bool is_inf() const { return std::isinf(v_); }

    // 1/p, with 1/inf = 0.
    double recip() const { return is_inf() ? 0.0 : 1.0 / v_; }

    // Conjugate exponent: 1/p + 1/p' = 1, with 1' = inf and inf' = 1.
    Exponent conj() const {
        if (is_inf()) return Exponent(1.0);
        if (v_ == 1.0) return infinity();
        return Exponent(v_ / (v_ - 1.0));
    }

    friend bool operator==(const Exponent& a, const Exponent& b) { return a.v_ == b.v_; }
    friend bool operator<(const Exponent& a, const Exponent& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Exponent& a, const Exponent& b) { return a.v_ <= b.v_; }

private:
    double v_;
};

// Compares exponent relations in reciprocal space, where the admissibility
// identities (1/r + 1/s = 1 + 1/q, s = r') live. Tolerance 1e-12.
inline bool recip_close(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

// pow with the 0^0 = 1 convention used throughout the sharp-constant calculus.
inline double pow00(double base, double expo) {
    if (expo == 0.0) return 1.0;
    if (base == 0.0) {
        if (expo < 0.0) throw std::domain_error("pow00: 0 raised to a negative power");
        return 0.0;
    }
    if (base < 0.0) {
        if (std::abs(base) < 1e-13) return 1.0;  // 0^0 up to exponent-arithmetic rounding
        throw std::domain_error("pow00: negative base " + std::to_string(base));
    }
    return std::pow(base, expo);
}

}  // namespace tfq
