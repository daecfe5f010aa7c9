// Self-contained FFT engine. Iterative radix-2 for power-of-two lengths and a
// Bluestein chirp-z fallback for everything else, so any grid size the Grid
// invariants allow (even n >= 8) is supported. A plan is immutable after
// construction and safe to share across threads.
#pragma once

#include <cstddef>
#include <vector>

#include "tfq/core.hpp"

namespace tfq {

class Fft {
public:
    explicit Fft(std::size_t n);

    std::size_t size() const { return n_; }

    // Unnormalized transforms:
    //   forward:  X_k = sum_j x_j e^{-2 pi i jk/n}
    //   inverse:  x_j = (1/n) sum_k X_k e^{+2 pi i jk/n}
    void forward(std::vector<cd>& v) const;
    void inverse(std::vector<cd>& v) const;

private:
    void exec_pow2(std::vector<cd>& v, bool inv) const;
    void exec_bluestein(std::vector<cd>& v, bool inv) const;

    std::size_t n_;
    bool pow2_;
    // radix-2 tables (size n when pow2)
    std::vector<std::size_t> rev_;
    std::vector<cd> tw_;       // e^{-2 pi i j / n}, j < n/2
    // Bluestein state
    std::size_t m_ = 0;        // padded power-of-two size >= 2n-1
    std::vector<cd> chirp_;    // e^{-pi i j^2 / n}
    std::vector<cd> bspec_;    // forward FFT of the padded chirp-conjugate kernel
    std::vector<std::size_t> mrev_;
    std::vector<cd> mtw_;
};

}  // namespace tfq
