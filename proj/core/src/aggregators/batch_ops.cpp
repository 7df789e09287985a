#include "nmf/batch_ops.hpp"

#include <cmath>
#include <string>

#include "nmf/errors.hpp"

namespace nmf {

namespace {

void check_dims(std::span<const StateVec> seq, const char* where) {
    for (const StateVec& v : seq) require_same_dim(seq.front(), v, where);
}

void check_corr_length(std::span<const double> weights, std::size_t length) {
    if (length > weights.size()) {
        throw ValidationError("correlation weights exhausted at t = " + std::to_string(weights.size()));
    }
}

}  // namespace

std::vector<StateVec> group_aggregate(std::span<const StateVec> trajectory) {
    std::vector<StateVec> out;
    if (trajectory.empty()) return out;
    check_dims(trajectory, "group_aggregate");
    out.reserve(trajectory.size());
    for (std::size_t t = 0; t < trajectory.size(); ++t) {
        StateVec g(trajectory.front().dim());
        for (std::size_t tau = 0; tau <= t; ++tau) g += trajectory[tau];
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<StateVec> group_decode(std::span<const StateVec> aggregates) {
    std::vector<StateVec> out;
    if (aggregates.empty()) return out;
    check_dims(aggregates, "group_decode");
    out.push_back(aggregates[0]);
    for (std::size_t t = 1; t < aggregates.size(); ++t) out.push_back(aggregates[t] - aggregates[t - 1]);
    return out;
}

std::vector<StateVec> conv_aggregate(const Kernel& kernel, std::span<const StateVec> trajectory) {
    std::vector<StateVec> out;
    if (trajectory.empty()) return out;
    check_dims(trajectory, "conv_aggregate");
    const std::vector<double> w = kernel.coefficients(trajectory.size());
    for (std::size_t t = 0; t < trajectory.size(); ++t) {
        StateVec r(trajectory.front().dim());
        for (std::size_t tau = 0; tau <= t; ++tau) r.axpy(w[tau], trajectory[t - tau]);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<StateVec> conv_decode(const Kernel& kernel, std::span<const StateVec> aggregates) {
    kernel.require_invertible();
    std::vector<StateVec> out;
    if (aggregates.empty()) return out;
    check_dims(aggregates, "conv_decode");
    const std::vector<double> w = kernel.coefficients(aggregates.size());
    for (std::size_t t = 0; t < aggregates.size(); ++t) {
        StateVec s = aggregates[t];
        for (std::size_t tau = 1; tau <= t; ++tau) s.axpy(-w[tau], out[t - tau]);
        s *= 1.0 / w[0];
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<StateVec> corr_aggregate(std::span<const double> weights, std::span<const StateVec> trajectory) {
    std::vector<StateVec> out;
    if (trajectory.empty()) return out;
    check_corr_length(weights, trajectory.size());
    check_dims(trajectory, "corr_aggregate");
    for (std::size_t t = 0; t < trajectory.size(); ++t) {
        StateVec r(trajectory.front().dim());
        for (std::size_t tau = 0; tau <= t; ++tau) r.axpy(weights[tau], trajectory[tau]);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<StateVec> corr_decode(std::span<const double> weights, std::span<const StateVec> aggregates) {
    std::vector<StateVec> out;
    if (aggregates.empty()) return out;
    check_corr_length(weights, aggregates.size());
    check_dims(aggregates, "corr_decode");
    for (std::size_t t = 0; t < aggregates.size(); ++t) {
        if (std::abs(weights[t]) < kInvertibleHead) throw NonInvertibleKernelError(weights[t]);
        StateVec s = t == 0 ? aggregates[0] : aggregates[t] - aggregates[t - 1];
        s *= 1.0 / weights[t];
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<StateVec> aggregate(const FunctorSpec& spec, std::span<const StateVec> trajectory) {
    auto aggregator = build_functor(spec);
    return run(*aggregator, trajectory);
}

std::vector<StateVec> decode(const FunctorSpec& spec, std::span<const StateVec> aggregates) {
    auto decoder = build_decoder(spec);
    return run(*decoder, aggregates);
}

}  // namespace nmf
