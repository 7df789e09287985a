#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "nmf/finite_mdp.hpp"
#include "nmf/functor_spec.hpp"
#include "nmf/nmdp_oracle.hpp"
#include "nmf/wrappers.hpp"

namespace nmf {

inline constexpr double kDependencyThreshold = 1e-9;
inline constexpr std::size_t kDefaultHistoryCap = 100000;

/// D_{h_t}: the history positions whose state matters for the next transition.
struct DependencyStructure {
    std::size_t t = 0;
    std::vector<std::size_t> indices;              // sorted, within [0, t]
    std::optional<std::map<std::size_t, double>> weights;

    // Empirical bookkeeping: substitutions tried, and how many of them produced
    // a history whose latest state decodes to no base state. Those count as a
    // change of the transition distribution.
    std::size_t substitutions = 0;
    std::size_t undecodable = 0;

    nlohmann::json to_json() const;
};

/// Generic form: sigma_i(h, p) for every pool vector p and position i.
DependencyStructure empirical_dependency(const NmdpOracle& oracle, const History& h,
                                         std::span<const StateVec> state_pool);

/// For a wrapped tabular MDP the substitute at position i is the aggregate of
/// the decoded prefix s_0..s_{i-1} followed by a base state p, for every base
/// state p; later aggregates are kept as they are.
DependencyStructure empirical_dependency(const AggregatedOracle& oracle, const History& h);

/// [t-n, t] for group powers; otherwise the support of the first row of the
/// inverted (composed) kernel. Throws ValidationError for correlation stages.
DependencyStructure analytical_dependency(const FunctorSpec& spec, std::size_t t);

/// Every history of positive probability with time() <= horizon, in
/// breadth-first order. Throws StateExplosionError past `cap`.
std::vector<History> reachable_histories(const NmdpOracle& oracle, std::size_t horizon,
                                         std::size_t cap = kDefaultHistoryCap);

/// Non-Markov embedding N(m): conditions only on the latest state.
class NonMarkovEmbedding final : public NmdpOracle {
public:
    explicit NonMarkovEmbedding(FiniteMdp mdp) : mdp_(std::move(mdp)) {}

    VecDistribution initial() const override;
    VecDistribution transition(const History& history, ActionId action) const override;
    int num_actions() const override { return mdp_.num_actions(); }

    const FiniteMdp& mdp() const noexcept { return mdp_; }

private:
    FiniteMdp mdp_;
};

std::unique_ptr<NmdpOracle> build_nonmarkov_embedding(const FiniteMdp& m);

/// Markov abstraction M(oracle) truncated at a horizon. Histories at the
/// horizon become absorbing zero-reward states.
struct HistoryMdp {
    FiniteMdp mdp;
    std::vector<History> histories;  // state index -> history
    std::size_t horizon = 0;
};

HistoryMdp build_markov_abstraction(const NmdpOracle& oracle, std::size_t horizon,
                                    std::size_t cap = kDefaultHistoryCap);

struct Violation {
    std::string where;
    double expected = 0.0;
    double got = 0.0;
};

struct CheckReport {
    bool pass = true;
    std::vector<Violation> violations;
    double max_discrepancy = 0.0;
    std::size_t cells_checked = 0;
    std::optional<DependencyStructure> dependency;

    nlohmann::json to_json() const;
};

/// Compares every (history-state, action) row of an abstraction of N(m) with the
/// table row of m at the history's latest state, and the initial distributions.
CheckReport check_equivalence(const FiniteMdp& m, const HistoryMdp& abstraction, double tol = kProbTolerance);

/// Builds M(N(m)) to `horizon` and checks it.
CheckReport verify_equivalence_roundtrip(const FiniteMdp& m, std::size_t horizon,
                                         std::size_t cap = kDefaultHistoryCap);

/// Moves 1e-6 of probability in one seeded (history-state, action) row to a
/// history-state whose latest base state differs. Returns the mutated cell.
std::pair<int, ActionId> inject_fault(HistoryMdp& abstraction, const FiniteMdp& base, std::uint64_t seed,
                                      double mass = 1e-6);

struct MorphismMaps {
    std::vector<int> phi_s;
    std::vector<int> phi_a;
    std::vector<std::pair<double, double>> phi_r;  // (reward in m, reward in m2)

    static MorphismMaps identity(const FiniteMdp& m);
};

MorphismMaps parse_morphism_maps(const nlohmann::json& j);
/// phi2 after phi1.
MorphismMaps compose(const MorphismMaps& phi1, const MorphismMaps& phi2);

/// Pointwise check of rho0 = rho0' o phi_S and
/// T(s,a)(s',r) = T'(phi_S s, phi_A a)(phi_S s', phi_R r) over every cell.
CheckReport verify_morphism(const FiniteMdp& m, const FiniteMdp& m2, const MorphismMaps& phi,
                            double tol = kProbTolerance);

}  // namespace nmf
