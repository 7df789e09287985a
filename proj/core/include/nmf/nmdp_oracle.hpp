#pragma once

#include "nmf/distribution.hpp"
#include "nmf/history.hpp"

namespace nmf {

/// Exact transition evaluator of a non-Markovian decision process:
/// T_t : H_t x A -> Delta(S x R) plus an initial distribution over S.
///
/// Implementations must be deterministic and return distributions that sum
/// to one within kProbTolerance.
class NmdpOracle {
public:
    virtual ~NmdpOracle() = default;

    virtual VecDistribution initial() const = 0;
    virtual VecDistribution transition(const History& history, ActionId action) const = 0;
    virtual int num_actions() const = 0;
};

}  // namespace nmf
