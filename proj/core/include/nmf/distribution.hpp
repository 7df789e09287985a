#pragma once

#include <vector>

#include "nmf/state.hpp"

namespace nmf {

/// One entry of a tabular transition row.
struct Outcome {
    int next = 0;
    double reward = 0.0;
    double prob = 0.0;

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

using OutcomeList = std::vector<Outcome>;

inline constexpr double kProbTolerance = 1e-12;
inline constexpr double kVectorTolerance = 1e-9;

/// Sorted by (next, reward), duplicates merged, zero-probability entries dropped.
OutcomeList canonicalize(OutcomeList outcomes);

/// Largest absolute probability difference over the union of supports.
double distribution_distance(const OutcomeList& a, const OutcomeList& b);

bool same_distribution(const OutcomeList& a, const OutcomeList& b, double tol = kProbTolerance);

/// Entry of a distribution over (observation vector, reward).
struct VecOutcome {
    StateVec observation;
    double reward = 0.0;
    double prob = 0.0;
};

using VecDistribution = std::vector<VecOutcome>;

/// Merges entries whose observation and reward agree within key_tol, drops
/// zero-probability entries and sorts lexicographically by (observation, reward).
VecDistribution canonicalize(VecDistribution dist, double key_tol = kVectorTolerance);

/// Largest absolute probability difference over the union of supports; support
/// points are identified when observation and reward agree within key_tol.
double distribution_distance(const VecDistribution& a, const VecDistribution& b,
                             double key_tol = kVectorTolerance);

bool same_distribution(const VecDistribution& a, const VecDistribution& b,
                       double tol = kProbTolerance, double key_tol = kVectorTolerance);

double total_probability(const OutcomeList& outcomes);
double total_probability(const VecDistribution& dist);

}  // namespace nmf
