#pragma once

#include <span>
#include <vector>

#include "nmf/functor_spec.hpp"
#include "nmf/kernel.hpp"
#include "nmf/state.hpp"

namespace nmf {

// Whole-trajectory forms. They compute directly from the defining sums and
// triangular systems, independently of the incremental aggregators.

/// g_t = sum_{tau <= t} s_tau.
std::vector<StateVec> group_aggregate(std::span<const StateVec> trajectory);
/// s_0 = g_0, s_t = g_t - g_{t-1}.
std::vector<StateVec> group_decode(std::span<const StateVec> aggregates);

/// r = w s with w the upper-triangular band (Toeplitz) matrix of the kernel.
std::vector<StateVec> conv_aggregate(const Kernel& kernel, std::span<const StateVec> trajectory);
/// Forward substitution on w s = r.
std::vector<StateVec> conv_decode(const Kernel& kernel, std::span<const StateVec> aggregates);

std::vector<StateVec> corr_aggregate(std::span<const double> weights, std::span<const StateVec> trajectory);
std::vector<StateVec> corr_decode(std::span<const double> weights, std::span<const StateVec> aggregates);

/// Runs the chain's incremental aggregator / decoder over a trajectory.
std::vector<StateVec> aggregate(const FunctorSpec& spec, std::span<const StateVec> trajectory);
std::vector<StateVec> decode(const FunctorSpec& spec, std::span<const StateVec> aggregates);

}  // namespace nmf
