#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptk/lexicon.hpp"
#include "ptk/taxonomy.hpp"
#include "ptk/text.hpp"

namespace ptk {

enum class Aggregator { Boltzmann, LogSumExp };

std::string to_string(Aggregator a);
std::optional<Aggregator> parse_aggregator(const std::string& name);

struct MetricConfig {
    double tau = 0.1;
    std::size_t k_samples = 16;
    double lambda_span = 0.5;
    Aggregator aggregator = Aggregator::Boltzmann;
    std::uint64_t rng_seed = 42;
};

enum class CandidateProvenance { Observed, Proposed };

struct CandidateSet {
    std::vector<Sentence> sentences;
    std::vector<CandidateProvenance> provenance;
};

struct ScoreReport {
    std::vector<std::pair<std::size_t, double>> per_candidate;
    double aggregate = 0.0;
    double span_reward = 0.0;
    bool span_reward_applied = false;  // false when no gold spans were supplied
    double total = 0.0;
};

using GoldSpans = std::vector<std::pair<ParaphraseType, Span>>;

// R = sim(y, y_ref) * fidelity. sim is the harmonic mean of synset-aware
// token-multiset precision and recall; fidelity gates on the requested type
// appearing in detect(x, y).
double base_similarity(const Sentence& x, const Sentence& y, const Sentence& y_ref,
                       std::optional<ParaphraseType> requested, const Lexicon& lex);

// Synset-aware multiset similarity alone (no fidelity gate).
double token_set_similarity(const Sentence& y, const Sentence& y_ref, const Lexicon& lex);

std::vector<Sentence> sample_proposals(const Sentence& x, std::optional<ParaphraseType> requested,
                                       const MetricConfig& cfg, const Lexicon& lex);

double soft_max_aggregate(const std::vector<double>& scores, double tau, Aggregator kind);

ScoreReport score(const Sentence& x, const Sentence& y, const std::vector<Sentence>& observed_refs,
                  std::optional<ParaphraseType> requested, const std::optional<GoldSpans>& gold,
                  const MetricConfig& cfg, const Lexicon& lex);

// Hard-max reference implementation (the tau -> 0 limit, no sampling).
ScoreReport hard_max_score(const Sentence& x, const Sentence& y,
                           const std::vector<Sentence>& refs, const std::optional<GoldSpans>& gold,
                           const MetricConfig& cfg, const Lexicon& lex);

}  // namespace ptk
