#include "tfq/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace tfq {
namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<std::size_t> bit_reversal(std::size_t n) {
    std::vector<std::size_t> rev(n, 0);
    std::size_t lg = 0;
    while ((std::size_t{1} << lg) < n) ++lg;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < lg; ++b)
            if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (lg - 1 - b);
        rev[i] = r;
    }
    return rev;
}

std::vector<cd> half_twiddles(std::size_t n) {
    std::vector<cd> tw(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
        double ang = -2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
        tw[j] = cd(std::cos(ang), std::sin(ang));
    }
    return tw;
}

// In-place radix-2 with precomputed tables. inv flips the twiddle sign; the
// 1/n scale is applied by the caller.
void radix2(std::vector<cd>& v, const std::vector<std::size_t>& rev, const std::vector<cd>& tw, bool inv) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i)
        if (rev[i] > i) std::swap(v[i], v[rev[i]]);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len >> 1;
        const std::size_t step = n / len;
        for (std::size_t blk = 0; blk < n; blk += len) {
            for (std::size_t j = 0; j < half; ++j) {
                cd w = tw[j * step];
                if (inv) w = std::conj(w);
                cd u = v[blk + j];
                cd t = v[blk + j + half] * w;
                v[blk + j] = u + t;
                v[blk + j + half] = u - t;
            }
        }
    }
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n), pow2_(is_pow2(n)) {
    if (n == 0) throw std::invalid_argument("Fft: zero length");
    if (pow2_) {
        rev_ = bit_reversal(n_);
        tw_ = half_twiddles(n_);
        return;
    }
    // Bluestein: x_k = conj(c_k) * IFFT_m[ FFT_m(conj(c) .* x) .* FFT_m(b) ]_k
    // with c_j = e^{-pi i j^2 / n} and b the padded two-sided chirp.
    m_ = 1;
    while (m_ < 2 * n_ - 1) m_ <<= 1;
    chirp_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
        // j^2 mod 2n keeps the angle argument small for large n
        std::size_t j2 = (j * j) % (2 * n_);
        double ang = -kPi * static_cast<double>(j2) / static_cast<double>(n_);
        chirp_[j] = cd(std::cos(ang), std::sin(ang));
    }
    mrev_ = bit_reversal(m_);
    mtw_ = half_twiddles(m_);
    std::vector<cd> b(m_, cd(0.0, 0.0));
    b[0] = std::conj(chirp_[0]);
    for (std::size_t j = 1; j < n_; ++j) {
        b[j] = std::conj(chirp_[j]);
        b[m_ - j] = std::conj(chirp_[j]);
    }
    radix2(b, mrev_, mtw_, false);
    bspec_ = std::move(b);
}

void Fft::forward(std::vector<cd>& v) const {
    if (v.size() != n_) throw std::invalid_argument("Fft::forward: length mismatch");
    if (pow2_) exec_pow2(v, false);
    else exec_bluestein(v, false);
}

void Fft::inverse(std::vector<cd>& v) const {
    if (v.size() != n_) throw std::invalid_argument("Fft::inverse: length mismatch");
    if (pow2_) exec_pow2(v, true);
    else exec_bluestein(v, true);
    const double s = 1.0 / static_cast<double>(n_);
    for (auto& z : v) z *= s;
}

void Fft::exec_pow2(std::vector<cd>& v, bool inv) const { radix2(v, rev_, tw_, inv); }

void Fft::exec_bluestein(std::vector<cd>& v, bool inv) const {
    // The inverse transform is the conjugate of the forward one.
    if (inv)
        for (auto& z : v) z = std::conj(z);
    std::vector<cd> a(m_, cd(0.0, 0.0));
    for (std::size_t j = 0; j < n_; ++j) a[j] = v[j] * chirp_[j];
    radix2(a, mrev_, mtw_, false);
    for (std::size_t j = 0; j < m_; ++j) a[j] *= bspec_[j];
    radix2(a, mrev_, mtw_, true);
    const double s = 1.0 / static_cast<double>(m_);
    for (std::size_t k = 0; k < n_; ++k) v[k] = chirp_[k] * a[k] * s;
    if (inv)
        for (auto& z : v) z = std::conj(z);
}

}  // namespace tfq
