#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nmf/functor_spec.hpp"
#include "nmf/rng.hpp"

namespace nmf {

/// Random band kernel of length 1..max_length whose head dominates the tail
/// (|w0| > sum |w_tau|), which keeps the inverse bounded over long horizons.
std::vector<double> random_dominant_kernel(Rng& rng, std::size_t max_length = 5);

/// Uniform [-1, 1] trajectory of `length` vectors in R^dim.
std::vector<StateVec> random_trajectory(Rng& rng, std::size_t dim, std::size_t length);

struct ReversibilityCase {
    std::string spec;
    std::size_t trajectories = 0;
    double max_error = 0.0;
};

struct ReversibilityReport {
    std::vector<ReversibilityCase> cases;
    double max_error = 0.0;
    double tolerance = 1e-6;
    bool pass() const { return max_error <= tolerance; }
    nlohmann::json to_json() const;
};

/// S, D, S_l / D_l at lambda 0.2..1.0, S^1..S^3 and `random_kernels` random
/// band kernels, each decoded after aggregating `trajectories` random
/// trajectories (dimension <= 6, length <= 64).
ReversibilityReport run_reversibility_suite(std::uint64_t seed, std::size_t trajectories = 1000,
                                            std::size_t random_kernels = 50);

}  // namespace nmf
