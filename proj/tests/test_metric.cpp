#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "ptk/errors.hpp"
#include "ptk/metric.hpp"
#include "ptk/text.hpp"

using namespace ptk;

namespace {

const Lexicon& fixture_lexicon() {
    static Lexicon lex = Lexicon::load(PTK_DATA_DIR "/lexicon.tsv");
    return lex;
}

}  // namespace

TEST_CASE("soft max approaches max as tau vanishes") {
    CHECK(soft_max_aggregate({0.2, 0.8}, 1e-6, Aggregator::Boltzmann) ==
          doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("soft max approaches the mean as tau grows") {
    CHECK(soft_max_aggregate({0.2, 0.8}, 1e6, Aggregator::Boltzmann) ==
          doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("boltzmann at tau 1 matches the closed form") {
    // Independent oracle: w_i = exp(r_i) / sum, value = sum w_i r_i.
    const double w0 = std::exp(0.2), w1 = std::exp(0.8);
    const double expected = (0.2 * w0 + 0.8 * w1) / (w0 + w1);
    CHECK(soft_max_aggregate({0.2, 0.8}, 1.0, Aggregator::Boltzmann) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.5875).epsilon(1e-3));
}

TEST_CASE("empty score set is rejected") {
    CHECK_THROWS_AS(soft_max_aggregate({}, 1.0, Aggregator::Boltzmann), EmptyScoreSet);
}

TEST_CASE("boltzmann stays within min and max on random sets") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> len(1, 12);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> scores(len(rng));
        for (auto& s : scores) s = unit(rng);
        const double lo = *std::min_element(scores.begin(), scores.end());
        const double hi = *std::max_element(scores.begin(), scores.end());
        for (double tau : {1e-6, 0.1, 1.0, 1e6}) {
            const double v = soft_max_aggregate(scores, tau, Aggregator::Boltzmann);
            CHECK(v >= lo - 1e-12);
            CHECK(v <= hi + 1e-12);
        }
        const double mean =
            std::accumulate(scores.begin(), scores.end(), 0.0) / scores.size();
        CHECK(soft_max_aggregate(scores, 1e-6, Aggregator::Boltzmann) ==
              doctest::Approx(hi).epsilon(1e-6));
        CHECK(soft_max_aggregate(scores, 1e6, Aggregator::Boltzmann) ==
              doctest::Approx(mean).epsilon(1e-6));
    }
}

TEST_CASE("logsumexp dominates the max and is set-monotone") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> scores = {unit(rng), unit(rng), unit(rng)};
        const double hi = *std::max_element(scores.begin(), scores.end());
        const double before = soft_max_aggregate(scores, 0.5, Aggregator::LogSumExp);
        CHECK(before >= hi);
        scores.push_back(unit(rng));
        const double after = soft_max_aggregate(scores, 0.5, Aggregator::LogSumExp);
        CHECK(after >= before);
    }
}

TEST_CASE("base similarity identity and disjoint extremes") {
    const Lexicon& lex = fixture_lexicon();
    Sentence y = tokenize("Avoid procrastination .");
    CHECK(base_similarity(y, y, y, std::nullopt, lex) == doctest::Approx(1.0));

    Sentence other = sentence_from_tokens({"qqq", "zzz"});
    CHECK(base_similarity(y, y, other, std::nullopt, lex) == doctest::Approx(0.0));
}

TEST_CASE("synset-aware similarity equates delay and defer") {
    const Lexicon& lex = fixture_lexicon();
    Sentence x = tokenize("Do not postpone what you seek to do .");
    Sentence y = tokenize("Do not delay what you seek to accomplish .");
    Sentence ref = tokenize("Do not defer what you seek to accomplish .");
    CHECK(base_similarity(x, y, ref, ParaphraseType::SamePolaritySubstitution, lex) ==
          doctest::Approx(1.0));
    // Fidelity gates to zero when the requested type is absent from the pair.
    CHECK(base_similarity(x, y, ref, ParaphraseType::ChangeOfOrder, lex) ==
          doctest::Approx(0.0));
}

TEST_CASE("base similarity is symmetric without a requested type") {
    const Lexicon& lex = fixture_lexicon();
    Sentence x = tokenize("I went to the party .");
    Sentence a = tokenize("I went to the celebration .");
    Sentence b = tokenize("I go to the party now .");
    CHECK(base_similarity(x, a, b, std::nullopt, lex) ==
          doctest::Approx(base_similarity(x, b, a, std::nullopt, lex)));
}

TEST_CASE("proposal sampling is seeded and sized") {
    const Lexicon& lex = fixture_lexicon();
    Sentence x = tokenize("Do not postpone what you seek to do .");
    MetricConfig cfg;
    cfg.k_samples = 0;
    CHECK(sample_proposals(x, std::nullopt, cfg, lex).empty());

    cfg.k_samples = 8;
    auto a = sample_proposals(x, ParaphraseType::SamePolaritySubstitution, cfg, lex);
    auto b = sample_proposals(x, ParaphraseType::SamePolaritySubstitution, cfg, lex);
    REQUIRE(a.size() == 8);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

    // Every draw realizes a same-polarity substitution from the fixture sets.
    auto candidates = enumerate_candidate_edits(x, ParaphraseType::SamePolaritySubstitution, lex);
    CHECK(!candidates.empty());
    for (const auto& prop : a) CHECK(prop.size() == x.size());
}

TEST_CASE("proposals fall back to copies when nothing applies") {
    Lexicon empty;
    Sentence x = sentence_from_tokens({"qqq", "zzz"});
    MetricConfig cfg;
    cfg.k_samples = 3;
    auto props = sample_proposals(x, ParaphraseType::SamePolaritySubstitution, cfg, empty);
    REQUIRE(props.size() == 3);
    for (const auto& p : props) CHECK(p == x);
}

TEST_CASE("exact reference match saturates at low temperature") {
    const Lexicon& lex = fixture_lexicon();
    Sentence x = tokenize("Do not postpone what you seek to do .");
    Sentence y = tokenize("Do not delay what you seek to accomplish .");
    MetricConfig cfg;
    cfg.tau = 1e-6;
    ScoreReport r = score(x, y, {y}, std::nullopt, std::nullopt, cfg, lex);
    CHECK(r.aggregate == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(!r.span_reward_applied);
    CHECK(r.total == doctest::Approx(r.aggregate));
}

TEST_CASE("valid but unannotated synonym is not penalized") {
    const Lexicon& lex = fixture_lexicon();
    Sentence x = tokenize("Do not postpone what you seek to do .");
    Sentence y = tokenize("Do not defer what you seek to accomplish .");
    Sentence observed = tokenize("Do not delay what you seek to accomplish .");
    MetricConfig cfg;
    cfg.tau = 1e-6;
    ScoreReport r = score(x, y, {observed}, std::nullopt, std::nullopt, cfg, lex);
    CHECK(r.aggregate == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("gold spans equal to detection give full span reward") {
    const Lexicon& lex = fixture_lexicon();
    Sentence x = tokenize("Do not postpone what you seek to do .");
    Sentence y = tokenize("Do not delay what you seek to accomplish .");
    GoldSpans gold = {{ParaphraseType::SamePolaritySubstitution, {2, 3}},
                      {ParaphraseType::SamePolaritySubstitution, {7, 8}}};
    MetricConfig cfg;
    cfg.tau = 1e-6;
    ScoreReport r = score(x, y, {y}, std::nullopt, gold, cfg, lex);
    CHECK(r.span_reward == doctest::Approx(1.0));
    CHECK(r.span_reward_applied);
    CHECK(r.total == doctest::Approx(r.aggregate + cfg.lambda_span * 1.0));
}

TEST_CASE("no candidates is an error") {
    const Lexicon& lex = fixture_lexicon();
    Sentence x = tokenize("Avoid procrastination .");
    MetricConfig cfg;
    cfg.k_samples = 0;
    CHECK_THROWS_AS(score(x, x, {}, std::nullopt, std::nullopt, cfg, lex), NoCandidates);
    CHECK_THROWS_AS(
        hard_max_score(x, x, {}, std::nullopt, cfg, lex), NoCandidates);
}

TEST_CASE("hard max equals the low-temperature score without sampling") {
    const Lexicon& lex = fixture_lexicon();
    Sentence x = tokenize("Do not postpone what you seek to do .");
    Sentence y = tokenize("Do not delay what you seek to accomplish .");
    std::vector<Sentence> refs = {tokenize("Do not defer what you seek to accomplish ."),
                                  tokenize("Avoid procrastination .")};
    MetricConfig cfg;
    cfg.tau = 1e-6;
    cfg.k_samples = 0;
    ScoreReport soft = score(x, y, refs, std::nullopt, std::nullopt, cfg, lex);
    ScoreReport hard = hard_max_score(x, y, refs, std::nullopt, cfg, lex);
    CHECK(soft.aggregate == doctest::Approx(hard.aggregate).epsilon(1e-6));
}

TEST_CASE("score is permutation invariant over references") {
    const Lexicon& lex = fixture_lexicon();
    Sentence x = tokenize("I went to the party .");
    Sentence y = tokenize("I went to the celebration .");
    std::vector<Sentence> refs = {tokenize("I went to the party ."),
                                  tokenize("Avoid procrastination ."),
                                  tokenize("I go .")};
    MetricConfig cfg;
    cfg.k_samples = 0;
    ScoreReport a = score(x, y, refs, std::nullopt, std::nullopt, cfg, lex);
    std::reverse(refs.begin(), refs.end());
    ScoreReport b = score(x, y, refs, std::nullopt, std::nullopt, cfg, lex);
    CHECK(a.aggregate == doctest::Approx(b.aggregate).epsilon(1e-12));
}
