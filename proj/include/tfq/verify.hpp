// The bundled verification suite: every numbered criterion the toolkit must
// satisfy, runnable from the CLI (`verify all`) or the acceptance test binary.
// Randomized cases draw from a fixed seed (0xC04E) and are fully deterministic.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "tfq/grid.hpp"
#include "tfq/transforms.hpp"

namespace tfq {

struct VerifyCase {
    std::string id;
    std::string description;
    bool pass = false;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
};

struct VerifyReport {
    std::string suite;
    unsigned seed = 0xC04E;
    std::vector<VerifyCase> cases;
    bool overall = false;
};

// suite: one of {all, constants, transforms, operators, uncertainty}.
VerifyReport run_verify(const std::string& suite);

std::string verify_report_text(const VerifyReport& rep);
std::string verify_report_json(const VerifyReport& rep);

namespace verify {

using Rng = std::mt19937_64;
inline constexpr unsigned kSeed = 0xC04E;

struct MixtureParams {
    int min_terms = 1;
    int max_terms = 3;
    double max_center = 2.0;
    double min_lambda = 0.5;
    double max_lambda = 1.5;
    double max_modulation = 1.2;
};

// Random complex Gaussian mixture, concentrated well inside the grid so the
// periodic model's wraparound stays below the acceptance tolerances.
Signal random_mixture(const Grid& grid, Rng& rng, const MixtureParams& p = MixtureParams{});

// Random smooth symbol on the TF plane: sum of separable Gaussian bumps.
TFFunction random_symbol(const Grid& grid, Rng& rng, bool complex_amplitudes, double scale = 1.0);

}  // namespace verify

}  // namespace tfq
