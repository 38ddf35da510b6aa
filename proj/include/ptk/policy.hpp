#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "ptk/lexicon.hpp"
#include "ptk/metric.hpp"
#include "ptk/taxonomy.hpp"
#include "ptk/text.hpp"

namespace ptk {

// Explicit categorical distribution over a fixed candidate-edit support.
struct EditPolicy {
    std::vector<AtomicEdit> support;
    std::vector<double> action_probs;

    static EditPolicy uniform_over(std::vector<AtomicEdit> support);
    EditPolicy reference() const;  // uniform policy over the same support
};

struct PolicyConfig {
    double beta = 0.0;
    double gamma = 0.0;
    std::size_t horizon = 2;
    std::size_t n_rollouts = 64;
    std::size_t n_iterations = 20;
    double elite_fraction = 0.25;
    std::uint64_t rng_seed = 42;
};

struct Trajectory {
    std::vector<AtomicEdit> actions;
    Sentence final;
    double reward = 0.0;
};

struct SearchResult {
    Trajectory best;
    EditPolicy final_policy;
    std::vector<double> trace;  // per-iteration objective values, raw
};

double kl_divergence(const EditPolicy& p, const EditPolicy& q_ref);
double entropy(const EditPolicy& p);

double objective(const EditPolicy& p, const std::vector<Trajectory>& rollouts,
                 const PolicyConfig& cfg);

// Cross-entropy-method search over non-overlapping edit sequences; beta
// mixes the refit toward the uniform reference, gamma floors the entropy.
SearchResult search(const Sentence& x, const std::set<ParaphraseType>& requested_types,
                    const std::vector<Sentence>& observed_refs, const PolicyConfig& pcfg,
                    const MetricConfig& mcfg, const Lexicon& lex);

// Exhaustive optimum over all action subsets up to the horizon (test oracle
// for small supports, exposed for the CLI's --exhaustive mode).
Trajectory exhaustive_best(const Sentence& x, const std::vector<AtomicEdit>& support,
                           std::size_t horizon, const std::vector<Sentence>& observed_refs,
                           const MetricConfig& mcfg, const Lexicon& lex);

}  // namespace ptk
