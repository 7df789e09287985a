#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nmf/aggregator.hpp"
#include "nmf/kernel.hpp"

namespace nmf {

/// One element of a wrapper chain.
struct FunctorStage {
    enum class Kind {
        identity,     // "id"
        sum_power,    // "S^n": n-fold prefix sum (group_power(n))
        diff_power,   // "D^n": n-fold first difference, s_{-1} = 0
        sum_lambda,   // "S_l:x": geometric kernel (1, x, x^2, ...)
        diff_lambda,  // "D_l:x": band kernel (1, -x)
        conv,         // "conv:w0,w1,...": band kernel
        corr,         // "corr:w0,w1,...": correlation weights
    };

    Kind kind = Kind::identity;
    int power = 0;
    double lambda = 0.0;
    std::vector<double> weights;

    std::string to_string() const;
    /// Number of elementary aggregators this stage expands to.
    std::size_t depth() const;
};

/// A chain of stages applied left to right, e.g. "S^1+D_l:0.5".
///
/// Grammar: stage ("+" stage)*, where stage is one of
///   id | S | D | S^n | D^n | S_l:x | D_l:x | conv:w0,w1,... | corr:w0,w1,...
/// with n >= 0 and x in [0, 1].
class FunctorSpec {
public:
    FunctorSpec() = default;
    explicit FunctorSpec(std::vector<FunctorStage> stages);

    static FunctorSpec parse(std::string_view text);
    static FunctorSpec identity() { return {}; }
    static FunctorSpec sum_power(int n);
    static FunctorSpec diff_power(int n);
    static FunctorSpec sum_lambda(double lambda);
    static FunctorSpec diff_lambda(double lambda);
    static FunctorSpec conv(std::vector<double> weights);
    static FunctorSpec corr(std::vector<double> weights);

    const std::vector<FunctorStage>& stages() const noexcept { return stages_; }
    bool is_identity() const;
    std::string to_string() const;

    /// This chain followed by `next`.
    FunctorSpec then(const FunctorSpec& next) const;

    /// Total n when every stage is id or S^n.
    std::optional<int> group_power() const;

    /// Kernel of one stage; nullopt for correlation stages.
    static std::optional<Kernel> stage_kernel(const FunctorStage& stage);

    /// Convolution of all stage kernels; nullopt if any stage is a correlation.
    std::optional<Kernel> composed_kernel(std::size_t truncation = kDefaultTruncation) const;

private:
    std::vector<FunctorStage> stages_;
};

/// Incremental aggregator / decoder for a wrapper chain.
std::unique_ptr<Aggregator> build_functor(const FunctorSpec& spec);
std::unique_ptr<Decoder> build_decoder(const FunctorSpec& spec);

}  // namespace nmf
