#pragma once

#include <memory>
#include <vector>

#include "nmf/kernel.hpp"
#include "nmf/state.hpp"

namespace nmf {

/// Incremental history aggregator for states: g_t = A_t(s_0..s_t).
/// begin() restarts the episode; push() consumes the next state.
class Aggregator {
public:
    virtual ~Aggregator() = default;

    virtual StateVec begin(const StateVec& s0) = 0;
    virtual StateVec push(const StateVec& s) = 0;
    virtual std::unique_ptr<Aggregator> clone() const = 0;
};

/// Paired inverse: consumes g_0, g_1, ... and returns s_0, s_1, ...
class Decoder {
public:
    virtual ~Decoder() = default;

    virtual StateVec begin(const StateVec& g0) = 0;
    virtual StateVec push(const StateVec& g) = 0;
    virtual std::unique_ptr<Decoder> clone() const = 0;
};

class IdentityAggregator final : public Aggregator {
public:
    StateVec begin(const StateVec& s0) override { return s0; }
    StateVec push(const StateVec& s) override { return s; }
    std::unique_ptr<Aggregator> clone() const override { return std::make_unique<IdentityAggregator>(*this); }
};

class IdentityDecoder final : public Decoder {
public:
    StateVec begin(const StateVec& g0) override { return g0; }
    StateVec push(const StateVec& g) override { return g; }
    std::unique_ptr<Decoder> clone() const override { return std::make_unique<IdentityDecoder>(*this); }
};

/// Group-operator HAS on (R^k, +): running prefix sum.
class PrefixSumAggregator final : public Aggregator {
public:
    StateVec begin(const StateVec& s0) override;
    StateVec push(const StateVec& s) override;
    std::unique_ptr<Aggregator> clone() const override { return std::make_unique<PrefixSumAggregator>(*this); }

private:
    StateVec sum_;
};

/// s_t = g_t - g_{t-1}.
class PrefixSumDecoder final : public Decoder {
public:
    StateVec begin(const StateVec& g0) override;
    StateVec push(const StateVec& g) override;
    std::unique_ptr<Decoder> clone() const override { return std::make_unique<PrefixSumDecoder>(*this); }

private:
    StateVec previous_;
};

/// Keeps the last `capacity` vectors; at(1) is the most recent.
class StateRing {
public:
    explicit StateRing(std::size_t capacity = 0) : slots_(capacity) {}

    void clear() noexcept {
        size_ = 0;
        head_ = 0;
    }
    void push(StateVec v);
    std::size_t size() const noexcept { return size_; }
    const StateVec& at(std::size_t lag) const { return slots_[(head_ + slots_.size() - lag) % slots_.size()]; }

private:
    std::vector<StateVec> slots_;
    std::size_t size_ = 0;
    std::size_t head_ = 0;  // next write position
};

/// Convolution HAS with a band kernel: r_t = sum_{tau < b, tau <= t} w_tau s_{t-tau}.
/// O(b) per step.
class BandConvAggregator final : public Aggregator {
public:
    explicit BandConvAggregator(Kernel kernel);

    StateVec begin(const StateVec& s0) override;
    StateVec push(const StateVec& s) override;
    std::unique_ptr<Aggregator> clone() const override { return std::make_unique<BandConvAggregator>(*this); }

private:
    Kernel kernel_;
    StateRing past_;
};

/// s_t = w_0^{-1} (r_t - sum_{tau >= 1} w_tau s_{t-tau}), O(b) per step.
class BandConvDecoder final : public Decoder {
public:
    explicit BandConvDecoder(Kernel kernel);

    StateVec begin(const StateVec& g0) override;
    StateVec push(const StateVec& g) override;
    std::unique_ptr<Decoder> clone() const override { return std::make_unique<BandConvDecoder>(*this); }

private:
    Kernel kernel_;
    StateRing decoded_;
};

/// Convolution HAS with w_tau = first * ratio^tau, O(1) per step through the
/// running term acc_t = s_t + ratio * acc_{t-1}; output first * acc_t.
class GeometricConvAggregator final : public Aggregator {
public:
    GeometricConvAggregator(double first, double ratio);

    StateVec begin(const StateVec& s0) override;
    StateVec push(const StateVec& s) override;
    std::unique_ptr<Aggregator> clone() const override {
        return std::make_unique<GeometricConvAggregator>(*this);
    }

private:
    StateVec emit() const;

    double first_;
    double ratio_;
    StateVec acc_;
};

/// acc_t = r_t / first, s_t = acc_t - ratio * acc_{t-1}.
class GeometricConvDecoder final : public Decoder {
public:
    GeometricConvDecoder(double first, double ratio);

    StateVec begin(const StateVec& g0) override;
    StateVec push(const StateVec& g) override;
    std::unique_ptr<Decoder> clone() const override { return std::make_unique<GeometricConvDecoder>(*this); }

private:
    double first_;
    double ratio_;
    StateVec previous_acc_;
};

/// Correlation HAS: R_t = sum_{tau <= t} w_tau s_tau over an explicit finite
/// weight list. Pushing past the list throws ValidationError.
class CorrelationAggregator final : public Aggregator {
public:
    explicit CorrelationAggregator(std::vector<double> weights);

    StateVec begin(const StateVec& s0) override;
    StateVec push(const StateVec& s) override;
    std::unique_ptr<Aggregator> clone() const override { return std::make_unique<CorrelationAggregator>(*this); }

private:
    std::vector<double> weights_;
    std::size_t t_ = 0;
    StateVec total_;
};

/// s_t = w_t^{-1} (R_t - R_{t-1}).
class CorrelationDecoder final : public Decoder {
public:
    explicit CorrelationDecoder(std::vector<double> weights);

    StateVec begin(const StateVec& g0) override;
    StateVec push(const StateVec& g) override;
    std::unique_ptr<Decoder> clone() const override { return std::make_unique<CorrelationDecoder>(*this); }

private:
    double weight(std::size_t t) const;

    std::vector<double> weights_;
    std::size_t t_ = 0;
    StateVec previous_;
};

/// Output of stage i feeds stage i + 1.
class ChainAggregator final : public Aggregator {
public:
    explicit ChainAggregator(std::vector<std::unique_ptr<Aggregator>> stages);
    ChainAggregator(const ChainAggregator& other);

    StateVec begin(const StateVec& s0) override;
    StateVec push(const StateVec& s) override;
    std::unique_ptr<Aggregator> clone() const override { return std::make_unique<ChainAggregator>(*this); }

private:
    std::vector<std::unique_ptr<Aggregator>> stages_;
};

/// Inverts a chain by decoding the stages in reverse order.
class ChainDecoder final : public Decoder {
public:
    /// `stages` are given in aggregation order.
    explicit ChainDecoder(std::vector<std::unique_ptr<Decoder>> stages);
    ChainDecoder(const ChainDecoder& other);

    StateVec begin(const StateVec& g0) override;
    StateVec push(const StateVec& g) override;
    std::unique_ptr<Decoder> clone() const override { return std::make_unique<ChainDecoder>(*this); }

private:
    std::vector<std::unique_ptr<Decoder>> stages_;
};

/// Runs an aggregator (or decoder) over a whole sequence from a fresh begin().
std::vector<StateVec> run(Aggregator& aggregator, std::span<const StateVec> sequence);
std::vector<StateVec> run(Decoder& decoder, std::span<const StateVec> sequence);

}  // namespace nmf
