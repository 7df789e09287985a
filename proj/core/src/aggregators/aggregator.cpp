#include "nmf/aggregator.hpp"

#include <cmath>
#include <string>

#include "nmf/errors.hpp"

namespace nmf {

StateVec PrefixSumAggregator::begin(const StateVec& s0) {
    sum_ = s0;
    return sum_;
}

StateVec PrefixSumAggregator::push(const StateVec& s) {
    sum_ += s;
    return sum_;
}

StateVec PrefixSumDecoder::begin(const StateVec& g0) {
    previous_ = g0;
    return g0;
}

StateVec PrefixSumDecoder::push(const StateVec& g) {
    StateVec s = g - previous_;
    previous_ = g;
    return s;
}

void StateRing::push(StateVec v) {
    if (slots_.empty()) return;
    slots_[head_] = std::move(v);
    head_ = (head_ + 1) % slots_.size();
    if (size_ < slots_.size()) ++size_;
}

BandConvAggregator::BandConvAggregator(Kernel kernel)
    : kernel_(std::move(kernel)), past_(kernel_.band_length() - 1) {}

StateVec BandConvAggregator::begin(const StateVec& s0) {
    past_.clear();
    return push(s0);
}

StateVec BandConvAggregator::push(const StateVec& s) {
    if (past_.size() > 0) require_same_dim(s, past_.at(1), "band convolution");
    const auto w = kernel_.band_coefficients();
    StateVec r = w[0] * s;
    for (std::size_t tau = 1; tau <= past_.size(); ++tau) r.axpy(w[tau], past_.at(tau));
    past_.push(s);
    return r;
}

BandConvDecoder::BandConvDecoder(Kernel kernel) : kernel_(std::move(kernel)), decoded_(kernel_.band_length() - 1) {
    kernel_.require_invertible();
}

StateVec BandConvDecoder::begin(const StateVec& g0) {
    decoded_.clear();
    return push(g0);
}

StateVec BandConvDecoder::push(const StateVec& g) {
    const auto w = kernel_.band_coefficients();
    StateVec s = g;
    for (std::size_t tau = 1; tau <= decoded_.size(); ++tau) s.axpy(-w[tau], decoded_.at(tau));
    if (w[0] != 1.0) s *= 1.0 / w[0];
    decoded_.push(s);
    return s;
}

GeometricConvAggregator::GeometricConvAggregator(double first, double ratio) : first_(first), ratio_(ratio) {
    (void)Kernel::geometric(first, ratio);
}

StateVec GeometricConvAggregator::begin(const StateVec& s0) {
    acc_ = s0;
    return emit();
}

StateVec GeometricConvAggregator::push(const StateVec& s) {
    acc_ *= ratio_;
    acc_ += s;
    return emit();
}

StateVec GeometricConvAggregator::emit() const { return first_ == 1.0 ? acc_ : first_ * acc_; }

GeometricConvDecoder::GeometricConvDecoder(double first, double ratio) : first_(first), ratio_(ratio) {
    Kernel::geometric(first, ratio).require_invertible();
}

StateVec GeometricConvDecoder::begin(const StateVec& g0) {
    previous_acc_ = first_ == 1.0 ? g0 : (1.0 / first_) * g0;
    return previous_acc_;
}

StateVec GeometricConvDecoder::push(const StateVec& g) {
    StateVec acc = first_ == 1.0 ? g : (1.0 / first_) * g;
    StateVec s = acc;
    s.axpy(-ratio_, previous_acc_);
    previous_acc_ = std::move(acc);
    return s;
}

CorrelationAggregator::CorrelationAggregator(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw ValidationError("correlation weights must be non-empty");
}

StateVec CorrelationAggregator::begin(const StateVec& s0) {
    t_ = 0;
    total_ = weights_[0] * s0;
    return total_;
}

StateVec CorrelationAggregator::push(const StateVec& s) {
    ++t_;
    if (t_ >= weights_.size()) {
        throw ValidationError("correlation weights exhausted at t = " + std::to_string(t_));
    }
    total_.axpy(weights_[t_], s);
    return total_;
}

CorrelationDecoder::CorrelationDecoder(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw ValidationError("correlation weights must be non-empty");
}

double CorrelationDecoder::weight(std::size_t t) const {
    if (t >= weights_.size()) {
        throw ValidationError("correlation weights exhausted at t = " + std::to_string(t));
    }
    if (std::abs(weights_[t]) < kInvertibleHead) throw NonInvertibleKernelError(weights_[t]);
    return weights_[t];
}

StateVec CorrelationDecoder::begin(const StateVec& g0) {
    t_ = 0;
    previous_ = g0;
    return (1.0 / weight(0)) * g0;
}

StateVec CorrelationDecoder::push(const StateVec& g) {
    ++t_;
    const double w = weight(t_);
    StateVec s = g - previous_;
    s *= 1.0 / w;
    previous_ = g;
    return s;
}

ChainAggregator::ChainAggregator(std::vector<std::unique_ptr<Aggregator>> stages) : stages_(std::move(stages)) {}

ChainAggregator::ChainAggregator(const ChainAggregator& other) {
    stages_.reserve(other.stages_.size());
    for (const auto& s : other.stages_) stages_.push_back(s->clone());
}

StateVec ChainAggregator::begin(const StateVec& s0) {
    StateVec x = s0;
    for (auto& stage : stages_) x = stage->begin(x);
    return x;
}

StateVec ChainAggregator::push(const StateVec& s) {
    StateVec x = s;
    for (auto& stage : stages_) x = stage->push(x);
    return x;
}

ChainDecoder::ChainDecoder(std::vector<std::unique_ptr<Decoder>> stages) : stages_(std::move(stages)) {}

ChainDecoder::ChainDecoder(const ChainDecoder& other) {
    stages_.reserve(other.stages_.size());
    for (const auto& s : other.stages_) stages_.push_back(s->clone());
}

StateVec ChainDecoder::begin(const StateVec& g0) {
    StateVec x = g0;
    for (auto it = stages_.rbegin(); it != stages_.rend(); ++it) x = (*it)->begin(x);
    return x;
}

StateVec ChainDecoder::push(const StateVec& g) {
    StateVec x = g;
    for (auto it = stages_.rbegin(); it != stages_.rend(); ++it) x = (*it)->push(x);
    return x;
}

std::vector<StateVec> run(Aggregator& aggregator, std::span<const StateVec> sequence) {
    std::vector<StateVec> out;
    out.reserve(sequence.size());
    for (std::size_t t = 0; t < sequence.size(); ++t) {
        out.push_back(t == 0 ? aggregator.begin(sequence[0]) : aggregator.push(sequence[t]));
    }
    return out;
}

std::vector<StateVec> run(Decoder& decoder, std::span<const StateVec> sequence) {
    std::vector<StateVec> out;
    out.reserve(sequence.size());
    for (std::size_t t = 0; t < sequence.size(); ++t) {
        out.push_back(t == 0 ? decoder.begin(sequence[0]) : decoder.push(sequence[t]));
    }
    return out;
}

}  // namespace nmf
