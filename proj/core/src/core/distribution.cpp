#include "nmf/distribution.hpp"

#include <algorithm>
#include <cmath>

namespace nmf {

OutcomeList canonicalize(OutcomeList outcomes) {
    std::sort(outcomes.begin(), outcomes.end(), [](const Outcome& a, const Outcome& b) {
        return a.next != b.next ? a.next < b.next : a.reward < b.reward;
    });
    OutcomeList merged;
    for (const Outcome& o : outcomes) {
        if (!merged.empty() && merged.back().next == o.next && merged.back().reward == o.reward) {
            merged.back().prob += o.prob;
        } else {
            merged.push_back(o);
        }
    }
    std::erase_if(merged, [](const Outcome& o) { return o.prob == 0.0; });
    return merged;
}

double distribution_distance(const OutcomeList& a, const OutcomeList& b) {
    const OutcomeList ca = canonicalize(a);
    const OutcomeList cb = canonicalize(b);
    double worst = 0.0;
    std::size_t i = 0, j = 0;
    auto key_less = [](const Outcome& x, const Outcome& y) {
        return x.next != y.next ? x.next < y.next : x.reward < y.reward;
    };
    while (i < ca.size() || j < cb.size()) {
        if (j == cb.size() || (i < ca.size() && key_less(ca[i], cb[j]))) {
            worst = std::max(worst, std::abs(ca[i++].prob));
        } else if (i == ca.size() || key_less(cb[j], ca[i])) {
            worst = std::max(worst, std::abs(cb[j++].prob));
        } else {
            worst = std::max(worst, std::abs(ca[i++].prob - cb[j++].prob));
        }
    }
    return worst;
}

bool same_distribution(const OutcomeList& a, const OutcomeList& b, double tol) {
    return distribution_distance(a, b) <= tol;
}

namespace {

bool same_key(const VecOutcome& a, const VecOutcome& b, double key_tol) {
    return std::abs(a.reward - b.reward) <= key_tol && approx_equal(a.observation, b.observation, key_tol);
}

}  // namespace

VecDistribution canonicalize(VecDistribution dist, double key_tol) {
    VecDistribution merged;
    merged.reserve(dist.size());
    for (VecOutcome& o : dist) {
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](const VecOutcome& m) { return same_key(m, o, key_tol); });
        if (it != merged.end()) {
            it->prob += o.prob;
        } else {
            merged.push_back(std::move(o));
        }
    }
    std::erase_if(merged, [](const VecOutcome& o) { return o.prob == 0.0; });
    std::sort(merged.begin(), merged.end(), [](const VecOutcome& a, const VecOutcome& b) {
        if (a.observation != b.observation) return lex_less(a.observation, b.observation);
        return a.reward < b.reward;
    });
    return merged;
}

double distribution_distance(const VecDistribution& a, const VecDistribution& b, double key_tol) {
    // Supports are small; quadratic matching avoids ordering vectors with a tolerance.
    double worst = 0.0;
    std::vector<bool> matched(b.size(), false);
    for (const VecOutcome& x : a) {
        double pb = 0.0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (same_key(x, b[j], key_tol)) {
                pb += b[j].prob;
                matched[j] = true;
            }
        }
        double pa = 0.0;
        for (const VecOutcome& y : a) {
            if (same_key(x, y, key_tol)) pa += y.prob;
        }
        worst = std::max(worst, std::abs(pa - pb));
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (!matched[j]) worst = std::max(worst, std::abs(b[j].prob));
    }
    return worst;
}

bool same_distribution(const VecDistribution& a, const VecDistribution& b, double tol, double key_tol) {
    return distribution_distance(a, b, key_tol) <= tol;
}

double total_probability(const OutcomeList& outcomes) {
    double total = 0.0;
    for (const Outcome& o : outcomes) total += o.prob;
    return total;
}

double total_probability(const VecDistribution& dist) {
    double total = 0.0;
    for (const VecOutcome& o : dist) total += o.prob;
    return total;
}

}  // namespace nmf
