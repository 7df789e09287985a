#include "nmf/reversibility.hpp"

#include <algorithm>
#include <cmath>

#include "nmf/batch_ops.hpp"
#include "nmf/text.hpp"

namespace nmf {

std::vector<double> random_dominant_kernel(Rng& rng, std::size_t max_length) {
    const std::size_t length = 1 + rng.index(max_length);
    std::vector<double> w(length);
    double tail = 0.0;
    for (std::size_t i = 1; i < length; ++i) {
        w[i] = rng.uniform(-1.0, 1.0);
        tail += std::abs(w[i]);
    }
    w[0] = (tail + rng.uniform(0.5, 1.5)) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
    return w;
}

std::vector<StateVec> random_trajectory(Rng& rng, std::size_t dim, std::size_t length) {
    std::vector<StateVec> out;
    out.reserve(length);
    for (std::size_t t = 0; t < length; ++t) {
        StateVec v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = rng.uniform(-1.0, 1.0);
        out.push_back(std::move(v));
    }
    return out;
}

nlohmann::json ReversibilityReport::to_json() const {
    nlohmann::json cases_json = nlohmann::json::array();
    for (const ReversibilityCase& c : cases) {
        cases_json.push_back({{"spec", c.spec}, {"trajectories", c.trajectories}, {"max_error", c.max_error}});
    }
    return {{"pass", pass()}, {"max_error", max_error}, {"tolerance", tolerance}, {"cases", cases_json}};
}

ReversibilityReport run_reversibility_suite(std::uint64_t seed, std::size_t trajectories,
                                            std::size_t random_kernels) {
    Rng rng(seed);
    std::vector<FunctorSpec> specs{FunctorSpec::sum_power(1), FunctorSpec::diff_power(1)};
    for (int i = 1; i <= 5; ++i) specs.push_back(FunctorSpec::sum_lambda(i / 5.0));
    for (int i = 1; i <= 5; ++i) specs.push_back(FunctorSpec::diff_lambda(i / 5.0));
    for (int n = 1; n <= 3; ++n) specs.push_back(FunctorSpec::sum_power(n));
    for (std::size_t i = 0; i < random_kernels; ++i) specs.push_back(FunctorSpec::conv(random_dominant_kernel(rng)));

    ReversibilityReport report;
    for (const FunctorSpec& spec : specs) {
        ReversibilityCase c;
        c.spec = spec.to_string();
        c.trajectories = trajectories;
        for (std::size_t k = 0; k < trajectories; ++k) {
            const std::size_t dim = 1 + rng.index(6);
            const std::size_t length = 1 + rng.index(64);
            const std::vector<StateVec> s = random_trajectory(rng, dim, length);
            const std::vector<StateVec> back = decode(spec, aggregate(spec, s));
            for (std::size_t t = 0; t < length; ++t) c.max_error = std::max(c.max_error, max_abs_diff(s[t], back[t]));
        }
        report.max_error = std::max(report.max_error, c.max_error);
        report.cases.push_back(std::move(c));
    }
    return report;
}

}  // namespace nmf
