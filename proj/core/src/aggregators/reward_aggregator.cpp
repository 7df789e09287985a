#include "nmf/reward_aggregator.hpp"

namespace nmf {

RewardAggregator::RewardAggregator(const FunctorSpec& spec) : aggregator_(build_functor(spec)) {}

RewardAggregator::RewardAggregator(const RewardAggregator& other)
    : aggregator_(other.aggregator_->clone()), started_(other.started_) {}

RewardAggregator& RewardAggregator::operator=(const RewardAggregator& other) {
    if (this != &other) {
        aggregator_ = other.aggregator_->clone();
        started_ = other.started_;
    }
    return *this;
}

double RewardAggregator::push(double reward) {
    const StateVec r{reward};
    const StateVec g = started_ ? aggregator_->push(r) : aggregator_->begin(r);
    started_ = true;
    return g[0];
}

RewardDecoder::RewardDecoder(const FunctorSpec& spec) : decoder_(build_decoder(spec)) {}

double RewardDecoder::push(double aggregated) {
    const StateVec g{aggregated};
    const StateVec r = started_ ? decoder_->push(g) : decoder_->begin(g);
    started_ = true;
    return r[0];
}

std::vector<double> har_aggregate(const FunctorSpec& spec, std::span<const double> rewards) {
    RewardAggregator agg(spec);
    std::vector<double> out;
    out.reserve(rewards.size());
    for (double r : rewards) out.push_back(agg.push(r));
    return out;
}

std::vector<double> har_decode(const FunctorSpec& spec, std::span<const double> aggregated) {
    RewardDecoder dec(spec);
    std::vector<double> out;
    out.reserve(aggregated.size());
    for (double g : aggregated) out.push_back(dec.push(g));
    return out;
}

}  // namespace nmf
