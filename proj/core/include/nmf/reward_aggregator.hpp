#pragma once

#include <memory>
#include <span>
#include <vector>

#include "nmf/functor_spec.hpp"

namespace nmf {

/// History aggregator for rewards: the wrapper chain's aggregator run on the scalar
/// reward stream r_0, r_1, ... (running sum for "S^1", a band kernel for "conv:").
class RewardAggregator {
public:
    explicit RewardAggregator(const FunctorSpec& spec);
    RewardAggregator(const RewardAggregator& other);
    RewardAggregator& operator=(const RewardAggregator& other);

    void reset() noexcept { started_ = false; }
    double push(double reward);

private:
    std::unique_ptr<Aggregator> aggregator_;
    bool started_ = false;
};

class RewardDecoder {
public:
    explicit RewardDecoder(const FunctorSpec& spec);

    void reset() noexcept { started_ = false; }
    double push(double aggregated);

private:
    std::unique_ptr<Decoder> decoder_;
    bool started_ = false;
};

std::vector<double> har_aggregate(const FunctorSpec& spec, std::span<const double> rewards);
std::vector<double> har_decode(const FunctorSpec& spec, std::span<const double> aggregated);

}  // namespace nmf
