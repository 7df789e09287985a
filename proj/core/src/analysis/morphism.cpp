#include <algorithm>
#include <cmath>

#include "nmf/analysis.hpp"
#include "nmf/errors.hpp"
#include "nmf/text.hpp"

namespace nmf {

namespace {

constexpr double kRewardMatch = 1e-12;

double lookup(const OutcomeList& row, int next, double reward) {
    double p = 0.0;
    for (const Outcome& o : row) {
        if (o.next == next && std::abs(o.reward - reward) <= kRewardMatch) p += o.prob;
    }
    return p;
}

std::optional<double> map_reward(const MorphismMaps& phi, double r) {
    for (const auto& [from, to] : phi.phi_r) {
        if (std::abs(from - r) <= kRewardMatch) return to;
    }
    return std::nullopt;
}

}  // namespace

MorphismMaps MorphismMaps::identity(const FiniteMdp& m) {
    MorphismMaps phi;
    for (int s = 0; s < m.num_states(); ++s) phi.phi_s.push_back(s);
    for (int a = 0; a < m.num_actions(); ++a) phi.phi_a.push_back(a);
    for (double r : m.reward_support()) phi.phi_r.emplace_back(r, r);
    return phi;
}

MorphismMaps parse_morphism_maps(const nlohmann::json& j) {
    try {
        MorphismMaps phi;
        phi.phi_s = j.at("phi_S").get<std::vector<int>>();
        phi.phi_a = j.at("phi_A").get<std::vector<int>>();
        for (const auto& pair : j.at("phi_R")) {
            if (!pair.is_array() || pair.size() != 2) throw ValidationError("phi_R entries must be [from, to] pairs");
            phi.phi_r.emplace_back(pair[0].get<double>(), pair[1].get<double>());
        }
        return phi;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("morphism map: ") + e.what());
    }
}

MorphismMaps compose(const MorphismMaps& phi1, const MorphismMaps& phi2) {
    MorphismMaps out;
    for (int s : phi1.phi_s) {
        if (s < 0 || static_cast<std::size_t>(s) >= phi2.phi_s.size()) {
            throw ValidationError("phi_S image " + std::to_string(s) + " outside the second map's domain");
        }
        out.phi_s.push_back(phi2.phi_s[static_cast<std::size_t>(s)]);
    }
    for (int a : phi1.phi_a) {
        if (a < 0 || static_cast<std::size_t>(a) >= phi2.phi_a.size()) {
            throw ValidationError("phi_A image " + std::to_string(a) + " outside the second map's domain");
        }
        out.phi_a.push_back(phi2.phi_a[static_cast<std::size_t>(a)]);
    }
    for (const auto& [from, mid] : phi1.phi_r) {
        const std::optional<double> to = map_reward(phi2, mid);
        if (!to) throw ValidationError("phi_R image " + format_shortest(mid) + " outside the second map's domain");
        out.phi_r.emplace_back(from, *to);
    }
    return out;
}

CheckReport verify_morphism(const FiniteMdp& m, const FiniteMdp& m2, const MorphismMaps& phi, double tol) {
    if (phi.phi_s.size() != static_cast<std::size_t>(m.num_states())) {
        throw ValidationError("phi_S must list one image per source state (" + std::to_string(m.num_states()) + ")");
    }
    if (phi.phi_a.size() != static_cast<std::size_t>(m.num_actions())) {
        throw ValidationError("phi_A must list one image per source action (" + std::to_string(m.num_actions()) +
                              ")");
    }
    for (std::size_t s = 0; s < phi.phi_s.size(); ++s) {
        if (phi.phi_s[s] < 0 || phi.phi_s[s] >= m2.num_states()) {
            throw ValidationError("phi_S[" + std::to_string(s) + "] = " + std::to_string(phi.phi_s[s]) +
                                  " is out of range");
        }
    }
    for (std::size_t a = 0; a < phi.phi_a.size(); ++a) {
        if (phi.phi_a[a] < 0 || phi.phi_a[a] >= m2.num_actions()) {
            throw ValidationError("phi_A[" + std::to_string(a) + "] = " + std::to_string(phi.phi_a[a]) +
                                  " is out of range");
        }
    }
    for (double r : m.reward_support()) {
        if (!map_reward(phi, r)) throw ValidationError("phi_R does not cover reward " + format_shortest(r));
    }

    CheckReport report;
    auto record = [&](std::string where, double expected, double got) {
        const double diff = std::abs(expected - got);
        report.max_discrepancy = std::max(report.max_discrepancy, diff);
        if (diff > tol) report.violations.push_back({std::move(where), expected, got});
    };

    for (int s = 0; s < m.num_states(); ++s) {
        record("rho0[" + std::to_string(s) + "]", m.rho0()[static_cast<std::size_t>(s)],
               m2.rho0()[static_cast<std::size_t>(phi.phi_s[static_cast<std::size_t>(s)])]);
    }
    for (int s = 0; s < m.num_states(); ++s) {
        const int s2 = phi.phi_s[static_cast<std::size_t>(s)];
        for (int a = 0; a < m.num_actions(); ++a) {
            ++report.cells_checked;
            const OutcomeList& row = m.outcomes(s, a);
            const OutcomeList& row2 = m2.outcomes(s2, phi.phi_a[static_cast<std::size_t>(a)]);
            for (int next = 0; next < m.num_states(); ++next) {
                for (const auto& [r, r2] : phi.phi_r) {
                    record("T(" + std::to_string(s) + ", " + std::to_string(a) + ")(" + std::to_string(next) +
                               ", " + format_shortest(r) + ")",
                           lookup(row, next, r),
                           lookup(row2, phi.phi_s[static_cast<std::size_t>(next)], r2));
                }
            }
        }
    }
    report.pass = report.violations.empty();
    return report;
}

}  // namespace nmf
