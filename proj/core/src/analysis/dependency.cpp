#include <algorithm>
#include <cmath>

#include "nmf/analysis.hpp"
#include "nmf/errors.hpp"

namespace nmf {

namespace {

// substitutes[i] lists the replacement values tried at position i.
DependencyStructure probe(const NmdpOracle& oracle, const History& h,
                          const std::vector<std::vector<StateVec>>& substitutes) {
    DependencyStructure d;
    d.t = h.time();
    const int num_actions = oracle.num_actions();
    std::vector<VecDistribution> baseline;
    baseline.reserve(static_cast<std::size_t>(num_actions));
    for (ActionId a = 0; a < num_actions; ++a) baseline.push_back(oracle.transition(h, a));

    for (std::size_t i = 0; i <= d.t; ++i) {
        bool changed = false;
        for (const StateVec& replacement : substitutes[i]) {
            if (approx_equal(replacement, h.states()[i], 0.0)) continue;
            ++d.substitutions;
            const History perturbed = h.with_state(i, replacement);
            for (ActionId a = 0; a < num_actions && !changed; ++a) {
                try {
                    changed = !same_distribution(oracle.transition(perturbed, a), baseline[a]);
                } catch (const UndecodableHistoryError&) {
                    ++d.undecodable;
                    changed = true;
                }
            }
            if (changed) break;
        }
        if (changed) d.indices.push_back(i);
    }
    return d;
}

}  // namespace

DependencyStructure empirical_dependency(const NmdpOracle& oracle, const History& h,
                                         std::span<const StateVec> state_pool) {
    const std::vector<StateVec> pool(state_pool.begin(), state_pool.end());
    return probe(oracle, h, std::vector<std::vector<StateVec>>(h.time() + 1, pool));
}

DependencyStructure empirical_dependency(const AggregatedOracle& oracle, const History& h) {
    const std::vector<StateVec> decoded = oracle.decode_states(h.states());
    std::vector<std::vector<StateVec>> substitutes(h.time() + 1);
    for (std::size_t i = 0; i <= h.time(); ++i) {
        for (const StateVec& p : oracle.mdp().embedding()) {
            auto agg = build_functor(oracle.spec());
            StateVec g = i == 0 ? agg->begin(p) : agg->begin(decoded[0]);
            for (std::size_t j = 1; j < i; ++j) g = agg->push(decoded[j]);
            if (i > 0) g = agg->push(p);
            substitutes[i].push_back(std::move(g));
        }
    }
    return probe(oracle, h, substitutes);
}

DependencyStructure analytical_dependency(const FunctorSpec& spec, std::size_t t) {
    DependencyStructure d;
    d.t = t;
    const std::optional<Kernel> kernel = spec.composed_kernel(std::max(t + 1, kDefaultTruncation));
    if (!kernel) throw ValidationError("analytical dependency is undefined for correlation stages");
    const std::vector<double> row = invert_kernel(*kernel, t + 1);

    std::map<std::size_t, double> weights;
    for (std::size_t tau = 0; tau <= t; ++tau) {
        if (std::abs(row[tau]) > kDependencyThreshold) weights[t - tau] = row[tau];
    }
    if (const std::optional<int> n = spec.group_power()) {
        const std::size_t lo = t >= static_cast<std::size_t>(*n) ? t - static_cast<std::size_t>(*n) : 0;
        for (std::size_t i = lo; i <= t; ++i) d.indices.push_back(i);
    } else {
        for (const auto& [index, w] : weights) d.indices.push_back(index);
    }
    d.weights = std::move(weights);
    return d;
}

}  // namespace nmf
