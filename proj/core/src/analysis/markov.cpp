#include <algorithm>
#include <cmath>
#include <deque>

#include "nmf/analysis.hpp"
#include "nmf/errors.hpp"
#include "nmf/rng.hpp"
#include "nmf/text.hpp"

namespace nmf {

namespace {

struct Enumeration {
    std::vector<History> histories;
    std::vector<double> rho0;
    std::vector<std::vector<OutcomeList>> rows;  // empty for frontier histories
};

Enumeration enumerate(const NmdpOracle& oracle, std::size_t horizon, std::size_t cap, bool with_rows) {
    Enumeration e;
    auto admit = [&](History h, double p) {
        e.histories.push_back(std::move(h));
        e.rho0.push_back(p);
        if (e.histories.size() > cap) throw StateExplosionError(e.histories.size(), cap);
        return static_cast<int>(e.histories.size() - 1);
    };
    for (const VecOutcome& o : oracle.initial()) admit(History(o.observation), o.prob);

    for (std::size_t k = 0; k < e.histories.size(); ++k) {
        if (with_rows) e.rows.emplace_back();
        if (e.histories[k].time() >= horizon) continue;
        for (ActionId a = 0; a < oracle.num_actions(); ++a) {
            OutcomeList row;
            for (const VecOutcome& o : oracle.transition(e.histories[k], a)) {
                const int child = admit(e.histories[k].extended(a, o.reward, o.observation), 0.0);
                row.push_back({child, o.reward, o.prob});
            }
            if (with_rows) e.rows[k].push_back(std::move(row));
        }
    }
    return e;
}

std::string describe_history(std::size_t k, const History& h, int last) {
    return "history " + std::to_string(k) + " (t=" + std::to_string(h.time()) + ", last state " +
           std::to_string(last) + ")";
}

}  // namespace

std::vector<History> reachable_histories(const NmdpOracle& oracle, std::size_t horizon, std::size_t cap) {
    return enumerate(oracle, horizon, cap, false).histories;
}

VecDistribution NonMarkovEmbedding::initial() const {
    VecDistribution dist;
    for (int s = 0; s < mdp_.num_states(); ++s) {
        dist.push_back({mdp_.embed(s), 0.0, mdp_.rho0()[static_cast<std::size_t>(s)]});
    }
    return canonicalize(std::move(dist));
}

VecDistribution NonMarkovEmbedding::transition(const History& history, ActionId action) const {
    const std::optional<int> last = mdp_.decode_state(history.last_state());
    if (!last) {
        throw UndecodableHistoryError("undecodable history: latest state " + history.last_state().to_string() +
                                      " matches no embedded state within 1e-9");
    }
    VecDistribution dist;
    for (const Outcome& o : mdp_.outcomes(*last, action)) dist.push_back({mdp_.embed(o.next), o.reward, o.prob});
    return canonicalize(std::move(dist));
}

std::unique_ptr<NmdpOracle> build_nonmarkov_embedding(const FiniteMdp& m) {
    return std::make_unique<NonMarkovEmbedding>(m);
}

HistoryMdp build_markov_abstraction(const NmdpOracle& oracle, std::size_t horizon, std::size_t cap) {
    Enumeration e = enumerate(oracle, horizon, cap, true);
    const std::size_t n = e.histories.size();
    FiniteMdp::Table table(n);
    std::vector<StateVec> embedding;
    embedding.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (e.rows[k].empty()) {
            const OutcomeList stay{{static_cast<int>(k), 0.0, 1.0}};
            table[k].assign(static_cast<std::size_t>(oracle.num_actions()), stay);
        } else {
            table[k] = std::move(e.rows[k]);
        }
        embedding.push_back(StateVec{static_cast<double>(k)});
    }
    return {FiniteMdp(std::move(e.rho0), std::move(table), std::move(embedding)), std::move(e.histories), horizon};
}

CheckReport check_equivalence(const FiniteMdp& m, const HistoryMdp& abstraction, double tol) {
    CheckReport report;
    auto record = [&](std::string where, double expected, double got) {
        const double diff = std::abs(expected - got);
        report.max_discrepancy = std::max(report.max_discrepancy, diff);
        if (diff > tol) report.violations.push_back({std::move(where), expected, got});
    };

    const std::size_t n = abstraction.histories.size();
    std::vector<int> last(n, -1);
    for (std::size_t k = 0; k < n; ++k) {
        const std::optional<int> s = m.decode_state(abstraction.histories[k].last_state());
        if (!s) {
            report.violations.push_back({"history " + std::to_string(k) + ": latest state is not a base state",
                                         1.0, 0.0});
            continue;
        }
        last[k] = *s;
    }

    std::vector<double> rho(static_cast<std::size_t>(m.num_states()), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        if (last[k] >= 0) rho[static_cast<std::size_t>(last[k])] += abstraction.mdp.rho0()[k];
    }
    for (int s = 0; s < m.num_states(); ++s) {
        record("rho0[" + std::to_string(s) + "]", m.rho0()[static_cast<std::size_t>(s)],
               rho[static_cast<std::size_t>(s)]);
    }

    for (std::size_t k = 0; k < n; ++k) {
        if (last[k] < 0 || abstraction.histories[k].time() >= abstraction.horizon) continue;
        for (ActionId a = 0; a < m.num_actions(); ++a) {
            ++report.cells_checked;
            OutcomeList pushed;
            bool ok = true;
            for (const Outcome& o : abstraction.mdp.outcomes(static_cast<int>(k), a)) {
                if (last[static_cast<std::size_t>(o.next)] < 0) {
                    ok = false;
                    break;
                }
                pushed.push_back({last[static_cast<std::size_t>(o.next)], o.reward, o.prob});
            }
            const std::string cell = describe_history(k, abstraction.histories[k], last[k]) + ", action " +
                                     std::to_string(a);
            if (!ok) {
                report.violations.push_back({cell + ": successor is not a base state", 1.0, 0.0});
                continue;
            }
            const OutcomeList got = canonicalize(std::move(pushed));
            const OutcomeList expected = canonicalize(m.outcomes(last[k], a));
            // Walk the union of the two sorted supports.
            std::size_t i = 0;
            std::size_t j = 0;
            while (i < expected.size() || j < got.size()) {
                const bool take_e = j == got.size() ||
                                    (i < expected.size() && (expected[i].next < got[j].next ||
                                                             (expected[i].next == got[j].next &&
                                                              expected[i].reward <= got[j].reward)));
                const bool take_g = i == expected.size() ||
                                    (j < got.size() && (got[j].next < expected[i].next ||
                                                        (got[j].next == expected[i].next &&
                                                         got[j].reward <= expected[i].reward)));
                const Outcome& key = take_e ? expected[i] : got[j];
                const double pe = take_e ? expected[i].prob : 0.0;
                const double pg = take_g ? got[j].prob : 0.0;
                record(cell + ", outcome (next " + std::to_string(key.next) + ", reward " +
                           format_shortest(key.reward) + ")",
                       pe, pg);
                if (take_e) ++i;
                if (take_g) ++j;
            }
        }
    }
    report.pass = report.violations.empty();
    return report;
}

CheckReport verify_equivalence_roundtrip(const FiniteMdp& m, std::size_t horizon, std::size_t cap) {
    const NonMarkovEmbedding embedded(m);
    return check_equivalence(m, build_markov_abstraction(embedded, horizon, cap));
}

std::pair<int, ActionId> inject_fault(HistoryMdp& abstraction, const FiniteMdp& base, std::uint64_t seed,
                                      double mass) {
    const std::size_t n = abstraction.histories.size();
    std::vector<int> last(n);
    std::vector<std::pair<int, ActionId>> cells;
    for (std::size_t k = 0; k < n; ++k) {
        const std::optional<int> s = base.decode_state(abstraction.histories[k].last_state());
        if (!s) throw ValidationError("abstraction does not sit over the base MDP");
        last[k] = *s;
        if (abstraction.histories[k].time() < abstraction.horizon) {
            for (ActionId a = 0; a < abstraction.mdp.num_actions(); ++a) cells.emplace_back(static_cast<int>(k), a);
        }
    }
    if (cells.empty()) throw ValidationError("abstraction has no transition cells to mutate");

    Rng rng(seed);
    const std::size_t start = rng.index(cells.size());
    for (std::size_t step = 0; step < cells.size(); ++step) {
        const auto [k, a] = cells[(start + step) % cells.size()];
        OutcomeList row = abstraction.mdp.outcomes(k, a);
        auto source = std::find_if(row.begin(), row.end(), [&](const Outcome& o) { return o.prob >= mass; });
        if (source == row.end()) continue;
        const int source_base = last[static_cast<std::size_t>(source->next)];
        for (std::size_t target = 0; target < n; ++target) {
            if (last[target] == source_base) continue;
            const double reward = source->reward;
            source->prob -= mass;
            row.push_back({static_cast<int>(target), reward, mass});
            abstraction.mdp = abstraction.mdp.with_outcomes(k, a, canonicalize(std::move(row)));
            return {k, a};
        }
    }
    throw ValidationError("no cell admits a fault: every history ends in the same base state");
}

}  // namespace nmf
