#include "ptk/metric.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ptk/detector.hpp"
#include "ptk/errors.hpp"

namespace ptk {

std::string to_string(Aggregator a) {
    return a == Aggregator::Boltzmann ? "boltzmann" : "logsumexp";
}

std::optional<Aggregator> parse_aggregator(const std::string& name) {
    if (name == "boltzmann") return Aggregator::Boltzmann;
    if (name == "logsumexp") return Aggregator::LogSumExp;
    return std::nullopt;
}

namespace {

bool tokens_match(const Token& a, const Token& b, const Lexicon& lex) {
    return a.norm == b.norm || lex.share_synset(a.norm, b.norm);
}

// Kuhn's augmenting-path matching over the token compatibility graph.
bool try_augment(std::size_t i, const std::vector<std::vector<std::size_t>>& adj,
                 std::vector<long>& match_of_ref, std::vector<bool>& visited) {
    for (std::size_t j : adj[i]) {
        if (visited[j]) continue;
        visited[j] = true;
        if (match_of_ref[j] < 0 ||
            try_augment(static_cast<std::size_t>(match_of_ref[j]), adj, match_of_ref, visited)) {
            match_of_ref[j] = static_cast<long>(i);
            return true;
        }
    }
    return false;
}

}  // namespace

double token_set_similarity(const Sentence& y, const Sentence& y_ref, const Lexicon& lex) {
    const std::size_t n = y.size();
    const std::size_t m = y_ref.size();
    if (n == 0 || m == 0) return 0.0;

    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (tokens_match(y.tokens[i], y_ref.tokens[j], lex)) adj[i].push_back(j);
        }
    }
    std::vector<long> match_of_ref(m, -1);
    std::size_t matched = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<bool> visited(m, false);
        if (try_augment(i, adj, match_of_ref, visited)) ++matched;
    }
    if (matched == 0) return 0.0;
    const double precision = static_cast<double>(matched) / static_cast<double>(n);
    const double recall = static_cast<double>(matched) / static_cast<double>(m);
    return 2.0 * precision * recall / (precision + recall);
}

double base_similarity(const Sentence& x, const Sentence& y, const Sentence& y_ref,
                       std::optional<ParaphraseType> requested, const Lexicon& lex) {
    const double sim = token_set_similarity(y, y_ref, lex);
    if (!requested) return sim;
    DetectionReport report = detect(x, y, lex);
    bool has_type = std::any_of(report.edits.begin(), report.edits.end(),
                                [&](const DetectedEdit& e) { return e.ptype == *requested; });
    return has_type ? sim : 0.0;
}

std::vector<Sentence> sample_proposals(const Sentence& x, std::optional<ParaphraseType> requested,
                                       const MetricConfig& cfg, const Lexicon& lex) {
    std::vector<AtomicEdit> candidates;
    if (requested) {
        candidates = enumerate_candidate_edits(x, *requested, lex);
    } else {
        for (auto t : all_paraphrase_types()) {
            auto some = enumerate_candidate_edits(x, t, lex);
            candidates.insert(candidates.end(), some.begin(), some.end());
        }
    }

    std::mt19937_64 rng(cfg.rng_seed);
    std::vector<Sentence> out;
    out.reserve(cfg.k_samples);
    for (std::size_t k = 0; k < cfg.k_samples; ++k) {
        if (candidates.empty()) {
            out.push_back(x);
            continue;
        }
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        out.push_back(apply_edit(x, candidates[pick(rng)], lex));
    }
    return out;
}

double soft_max_aggregate(const std::vector<double>& scores, double tau, Aggregator kind) {
    if (scores.empty()) throw EmptyScoreSet();
    if (tau <= 0.0) throw ConfigError("tau must be positive");

    const double peak = *std::max_element(scores.begin(), scores.end());
    double weight_sum = 0.0;
    double weighted = 0.0;
    for (double r : scores) {
        const double w = std::exp((r - peak) / tau);
        weight_sum += w;
        weighted += w * r;
    }
    if (kind == Aggregator::Boltzmann) return weighted / weight_sum;
    return peak + tau * std::log(weight_sum);
}

namespace {

double span_f1(const std::vector<std::pair<ParaphraseType, Span>>& pred, const GoldSpans& gold) {
    if (pred.empty() && gold.empty()) return 1.0;
    if (pred.empty() || gold.empty()) return 0.0;
    std::vector<bool> used(gold.size(), false);
    std::size_t hits = 0;
    for (const auto& p : pred) {
        for (std::size_t j = 0; j < gold.size(); ++j) {
            if (!used[j] && gold[j].first == p.first && gold[j].second == p.second) {
                used[j] = true;
                ++hits;
                break;
            }
        }
    }
    if (hits == 0) return 0.0;
    const double precision = static_cast<double>(hits) / static_cast<double>(pred.size());
    const double recall = static_cast<double>(hits) / static_cast<double>(gold.size());
    return 2.0 * precision * recall / (precision + recall);
}

void add_span_term(ScoreReport& report, const Sentence& x, const Sentence& y,
                   const std::optional<GoldSpans>& gold, const MetricConfig& cfg,
                   const Lexicon& lex) {
    if (!gold) {
        report.span_reward = 0.0;
        report.span_reward_applied = false;
        report.total = report.aggregate;
        return;
    }
    DetectionReport det = detect(x, y, lex);
    std::vector<std::pair<ParaphraseType, Span>> pred;
    pred.reserve(det.edits.size());
    for (const auto& e : det.edits) pred.emplace_back(e.ptype, e.src_span);
    report.span_reward = span_f1(pred, *gold);
    report.span_reward_applied = true;
    report.total = report.aggregate + cfg.lambda_span * report.span_reward;
}

}  // namespace

ScoreReport score(const Sentence& x, const Sentence& y, const std::vector<Sentence>& observed_refs,
                  std::optional<ParaphraseType> requested, const std::optional<GoldSpans>& gold,
                  const MetricConfig& cfg, const Lexicon& lex) {
    if (observed_refs.empty() && cfg.k_samples == 0) throw NoCandidates();

    CandidateSet cands;
    for (const auto& ref : observed_refs) {
        cands.sentences.push_back(ref);
        cands.provenance.push_back(CandidateProvenance::Observed);
    }
    for (auto& prop : sample_proposals(x, requested, cfg, lex)) {
        cands.sentences.push_back(std::move(prop));
        cands.provenance.push_back(CandidateProvenance::Proposed);
    }

    ScoreReport report;
    std::vector<double> values;
    values.reserve(cands.sentences.size());
    for (std::size_t i = 0; i < cands.sentences.size(); ++i) {
        const double r = base_similarity(x, y, cands.sentences[i], requested, lex);
        report.per_candidate.emplace_back(i, r);
        values.push_back(r);
    }
    report.aggregate = soft_max_aggregate(values, cfg.tau, cfg.aggregator);
    add_span_term(report, x, y, gold, cfg, lex);
    return report;
}

ScoreReport hard_max_score(const Sentence& x, const Sentence& y,
                           const std::vector<Sentence>& refs, const std::optional<GoldSpans>& gold,
                           const MetricConfig& cfg, const Lexicon& lex) {
    if (refs.empty()) throw NoCandidates();

    ScoreReport report;
    double best = 0.0;
    for (std::size_t i = 0; i < refs.size(); ++i) {
        const double r = base_similarity(x, y, refs[i], std::nullopt, lex);
        report.per_candidate.emplace_back(i, r);
        best = std::max(best, r);
    }
    report.aggregate = best;
    add_span_term(report, x, y, gold, cfg, lex);
    return report;
}

}  // namespace ptk
