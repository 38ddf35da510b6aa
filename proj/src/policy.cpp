#include "ptk/policy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "ptk/errors.hpp"

namespace ptk {

EditPolicy EditPolicy::uniform_over(std::vector<AtomicEdit> support) {
    EditPolicy p;
    p.action_probs.assign(support.size(), support.empty() ? 0.0 : 1.0 / support.size());
    p.support = std::move(support);
    return p;
}

EditPolicy EditPolicy::reference() const {
    return uniform_over(support);
}

double kl_divergence(const EditPolicy& p, const EditPolicy& q_ref) {
    if (p.support != q_ref.support) throw SupportMismatch();
    double kl = 0.0;
    for (std::size_t i = 0; i < p.action_probs.size(); ++i) {
        const double pi = p.action_probs[i];
        if (pi <= 0.0) continue;
        kl += pi * std::log(pi / q_ref.action_probs[i]);
    }
    return std::max(kl, 0.0);
}

double entropy(const EditPolicy& p) {
    double h = 0.0;
    for (double pi : p.action_probs) {
        if (pi > 0.0) h -= pi * std::log(pi);
    }
    return h;
}

double objective(const EditPolicy& p, const std::vector<Trajectory>& rollouts,
                 const PolicyConfig& cfg) {
    double mean_reward = 0.0;
    if (!rollouts.empty()) {
        for (const auto& t : rollouts) mean_reward += t.reward;
        mean_reward /= static_cast<double>(rollouts.size());
    }
    return mean_reward - cfg.beta * kl_divergence(p, p.reference()) + cfg.gamma * entropy(p);
}

namespace {

// Reward of a finished paraphrase: the robust metric aggregate against the
// pooled observed + proposed references. The reference pool is fixed once
// per search so every rollout faces the same candidate set.
class RewardCache {
public:
    RewardCache(const Sentence& x, const std::vector<Sentence>& observed,
                const MetricConfig& mcfg, const Lexicon& lex)
        : x_(x), mcfg_(mcfg), lex_(lex) {
        refs_ = observed;
        for (auto& p : sample_proposals(x, std::nullopt, mcfg, lex)) refs_.push_back(std::move(p));
    }

    double reward(const Sentence& y) {
        const std::uint64_t key = fingerprint(y);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        std::vector<double> values;
        values.reserve(refs_.size());
        for (const auto& ref : refs_) values.push_back(token_set_similarity(y, ref, lex_));
        const double r = values.empty() ? 0.0 : soft_max_aggregate(values, mcfg_.tau, mcfg_.aggregator);
        cache_.emplace(key, r);
        return r;
    }

private:
    const Sentence& x_;
    std::vector<Sentence> refs_;
    MetricConfig mcfg_;
    const Lexicon& lex_;
    std::map<std::uint64_t, double> cache_;
};

std::vector<AtomicEdit> collect_support(const Sentence& x,
                                        const std::set<ParaphraseType>& requested,
                                        const Lexicon& lex) {
    std::vector<AtomicEdit> support;
    for (auto t : all_paraphrase_types()) {
        if (!requested.count(t)) continue;
        auto edits = enumerate_candidate_edits(x, t, lex);
        support.insert(support.end(), edits.begin(), edits.end());
    }
    return support;
}

Sentence apply_actions(const Sentence& x, const std::vector<AtomicEdit>& actions,
                       const Lexicon& lex) {
    // Actions are pairwise non-overlapping; apply right-to-left.
    std::vector<std::size_t> order(actions.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return effective_span(actions[a]).start > effective_span(actions[b]).start;
    });
    Sentence out = x;
    for (std::size_t i : order) out = apply_edit(out, actions[i], lex);
    return out;
}

}  // namespace

Trajectory exhaustive_best(const Sentence& x, const std::vector<AtomicEdit>& support,
                           std::size_t horizon, const std::vector<Sentence>& observed_refs,
                           const MetricConfig& mcfg, const Lexicon& lex) {
    RewardCache rewards(x, observed_refs, mcfg, lex);

    Trajectory best;
    best.final = x;
    best.reward = rewards.reward(x);

    std::vector<std::size_t> chosen;
    auto consider = [&](const std::vector<std::size_t>& idxs) {
        std::vector<AtomicEdit> actions;
        for (std::size_t i : idxs) actions.push_back(support[i]);
        Sentence y = apply_actions(x, actions, lex);
        const double r = rewards.reward(y);
        if (r > best.reward) {
            best.actions = std::move(actions);
            best.final = std::move(y);
            best.reward = r;
        }
    };

    // Depth-first over index-increasing, non-overlapping subsets.
    std::vector<std::size_t> stack;
    std::function<void(std::size_t)> walk = [&](std::size_t from) {
        if (stack.size() >= horizon) return;
        for (std::size_t i = from; i < support.size(); ++i) {
            bool clashes = false;
            for (std::size_t j : stack) {
                if (effective_span(support[i]).overlaps(effective_span(support[j]))) {
                    clashes = true;
                    break;
                }
            }
            if (clashes) continue;
            stack.push_back(i);
            consider(stack);
            walk(i + 1);
            stack.pop_back();
        }
    };
    walk(0);
    return best;
}

SearchResult search(const Sentence& x, const std::set<ParaphraseType>& requested_types,
                    const std::vector<Sentence>& observed_refs, const PolicyConfig& pcfg,
                    const MetricConfig& mcfg, const Lexicon& lex) {
    std::vector<AtomicEdit> support = collect_support(x, requested_types, lex);
    if (support.empty()) throw EmptyActionSupport();
    const std::size_t n = support.size();

    EditPolicy policy = EditPolicy::uniform_over(support);
    const EditPolicy ref = policy;

    RewardCache rewards(x, observed_refs, mcfg, lex);
    std::mt19937_64 rng(pcfg.rng_seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    SearchResult result;
    result.best.final = x;
    result.best.reward = rewards.reward(x);

    const double mix_ref = std::min(1.0, pcfg.beta / (pcfg.beta + 1.0));
    const double floor = pcfg.gamma / (pcfg.gamma + 1.0);

    for (std::size_t iter = 0; iter < pcfg.n_iterations; ++iter) {
        std::vector<Trajectory> rollouts;
        std::vector<std::vector<std::size_t>> rollout_actions;
        rollouts.reserve(pcfg.n_rollouts);

        for (std::size_t r = 0; r < pcfg.n_rollouts; ++r) {
            std::vector<std::size_t> picked;
            std::vector<bool> blocked(n, false);
            for (std::size_t step = 0; step < pcfg.horizon; ++step) {
                double mass = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (!blocked[i]) mass += policy.action_probs[i];
                }
                if (mass <= 0.0) break;
                double target = unit(rng) * mass;
                std::size_t choice = n;
                for (std::size_t i = 0; i < n; ++i) {
                    if (blocked[i]) continue;
                    target -= policy.action_probs[i];
                    if (target <= 0.0) {
                        choice = i;
                        break;
                    }
                }
                if (choice == n) {
                    for (std::size_t i = n; i-- > 0;) {
                        if (!blocked[i]) {
                            choice = i;
                            break;
                        }
                    }
                }
                picked.push_back(choice);
                for (std::size_t i = 0; i < n; ++i) {
                    if (blocked[i]) continue;
                    if (i == choice ||
                        effective_span(support[i]).overlaps(effective_span(support[choice]))) {
                        blocked[i] = true;
                    }
                }
            }

            Trajectory traj;
            for (std::size_t i : picked) traj.actions.push_back(support[i]);
            traj.final = apply_actions(x, traj.actions, lex);
            traj.reward = rewards.reward(traj.final);
            if (traj.reward > result.best.reward) result.best = traj;
            rollouts.push_back(std::move(traj));
            rollout_actions.push_back(std::move(picked));
        }

        double lo = rollouts.front().reward, hi = lo;
        for (const auto& t : rollouts) {
            lo = std::min(lo, t.reward);
            hi = std::max(hi, t.reward);
        }

        if (hi > lo) {
            std::vector<std::size_t> order(rollouts.size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return rollouts[a].reward > rollouts[b].reward;
            });
            std::size_t elite_count = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::llround(pcfg.elite_fraction *
                                                         static_cast<double>(rollouts.size()))));
            elite_count = std::min(elite_count, rollouts.size());

            std::vector<double> counts(n, 0.0);
            double total = 0.0;
            for (std::size_t e = 0; e < elite_count; ++e) {
                for (std::size_t i : rollout_actions[order[e]]) {
                    counts[i] += 1.0;
                    total += 1.0;
                }
            }
            // Add-one smoothing keeps the full support alive.
            for (std::size_t i = 0; i < n; ++i) {
                policy.action_probs[i] = (counts[i] + 1.0) / (total + static_cast<double>(n));
            }
        }
        // If every rollout scored the same there is no signal; keep the
        // current distribution and let the regularizers act.

        for (std::size_t i = 0; i < n; ++i) {
            double p = policy.action_probs[i];
            p = (1.0 - mix_ref) * p + mix_ref * ref.action_probs[i];
            p = (1.0 - floor) * p + floor * ref.action_probs[i];
            policy.action_probs[i] = p;
        }

        result.trace.push_back(objective(policy, rollouts, pcfg));
    }

    result.final_policy = policy;
    return result;
}

}  // namespace ptk
