// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each check is self-contained and uses independent oracles where
// the contract calls for one.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptk/detector.hpp"
#include "ptk/io.hpp"
#include "ptk/lexicon.hpp"
#include "ptk/metric.hpp"
#include "ptk/policy.hpp"
#include "ptk/stego.hpp"
#include "ptk/taxonomy.hpp"
#include "ptk/text.hpp"

using namespace ptk;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << "criterion " << number << " (" << name << "): " << (ok ? "PASS" : "FAIL");
    if (!ok && !detail.empty()) std::cout << " -- " << detail;
    std::cout << std::endl;
    if (!ok) ++failures;
}

void run(int number, const std::string& name, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(number, name, false, std::string("exception: ") + e.what());
    }
}

const Lexicon& fixture_lexicon() {
    static Lexicon lex = Lexicon::load(PTK_DATA_DIR "/lexicon.tsv");
    return lex;
}

std::vector<Sentence> fixture_corpus() {
    std::vector<Sentence> corpus;
    for (const auto& rec : io::read_jsonl(PTK_DATA_DIR "/corpus.jsonl")) {
        corpus.push_back(tokenize(rec["text"].get<std::string>()));
    }
    return corpus;
}

const std::vector<ParaphraseType>& detectable_types() {
    static const std::vector<ParaphraseType> types = {
        ParaphraseType::SamePolaritySubstitution, ParaphraseType::OppositePolaritySubstitution,
        ParaphraseType::NegationSwitch,           ParaphraseType::DerivationalChange,
        ParaphraseType::InflectionalChange,       ParaphraseType::ChangeOfOrder,
        ParaphraseType::PunctuationChange,        ParaphraseType::AdditionDeletion,
    };
    return types;
}

// --- criterion 1 -----------------------------------------------------------

void criterion_fidelity() {
    const Lexicon& lex = fixture_lexicon();
    Sentence b1 = tokenize("Do not postpone what you seek to do .");
    Sentence b1_star = tokenize("Do postpone what you seek to do .");
    Sentence b2 = tokenize("Do not delay what you seek to accomplish .");

    AtomicEdit s1;
    s1.action = EditAction::Sub;
    s1.src_span = {2, 3};
    s1.lemma = "delay";
    s1.declared_type = ParaphraseType::SamePolaritySubstitution;
    AtomicEdit s2 = s1;
    s2.src_span = {7, 8};
    s2.lemma = "accomplish";

    Sentence applied = apply_script(b1, make_script(b1, {s1, s2}), lex);
    bool ok = applied == b2;

    DetectionReport fwd = detect(b1, b2, lex);
    ok = ok && fwd.edits.size() == 2 &&
         fwd.edits[0].ptype == ParaphraseType::SamePolaritySubstitution &&
         fwd.edits[0].src_span == Span{2, 3} &&
         fwd.edits[1].ptype == ParaphraseType::SamePolaritySubstitution &&
         fwd.edits[1].src_span == Span{7, 8} && fwd.is_paraphrase;

    DetectionReport neg = detect(b1_star, b2, lex);
    bool has_negation = std::any_of(neg.edits.begin(), neg.edits.end(), [](const DetectedEdit& e) {
        return e.ptype == ParaphraseType::NegationSwitch;
    });
    ok = ok && has_negation && !neg.is_paraphrase;

    report(1, "worked-example fidelity", ok);
}

// --- criterion 2 -----------------------------------------------------------

void criterion_round_trip() {
    const Lexicon& lex = fixture_lexicon();
    std::vector<Sentence> corpus = fixture_corpus();
    std::size_t total = 0, passed = 0;
    std::string first_failure;
    for (const auto& s : corpus) {
        for (auto t : detectable_types()) {
            for (const auto& e : enumerate_candidate_edits(s, t, lex)) {
                ++total;
                if (round_trip_check(s, make_script(s, {e}), lex)) {
                    ++passed;
                } else if (first_failure.empty()) {
                    first_failure = detokenize(s) + " | " + to_string(t) + " @ " +
                                    std::to_string(e.src_span.start);
                }
            }
        }
    }
    std::ostringstream detail;
    detail << passed << "/" << total << " recovered; first miss: " << first_failure;
    report(2, "round-trip detection suite", corpus.size() >= 20 && total > 0 && passed == total,
           detail.str());
}

// --- criterion 3 -----------------------------------------------------------

unsigned oracle_cost(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<std::vector<unsigned>> d(a.size() + 1, std::vector<unsigned>(b.size() + 1, 0));
    for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<unsigned>(i);
    for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<unsigned>(j);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            unsigned sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0u : 1u);
            d[i][j] = std::min({sub, d[i - 1][j] + 1, d[i][j - 1] + 1});
        }
    }
    return d[a.size()][b.size()];
}

void criterion_alignment_oracle() {
    static const std::vector<std::string> alphabet = {"a", "b", "c", "d", "e"};
    std::mt19937_64 rng(20240801);
    std::uniform_int_distribution<std::size_t> len(1, 8);
    std::uniform_int_distribution<int> sym(0, 4);

    std::size_t mismatches = 0;
    const std::size_t pairs = 10000;
    for (std::size_t trial = 0; trial < pairs; ++trial) {
        std::vector<int> a(len(rng)), b(len(rng));
        for (auto& v : a) v = sym(rng);
        for (auto& v : b) v = sym(rng);
        std::vector<std::string> sa, sb;
        for (int v : a) sa.push_back(alphabet[static_cast<std::size_t>(v)]);
        for (int v : b) sb.push_back(alphabet[static_cast<std::size_t>(v)]);
        if (align(sentence_from_tokens(sa), sentence_from_tokens(sb)).cost != oracle_cost(a, b)) {
            ++mismatches;
        }
    }
    report(3, "alignment oracle equivalence", mismatches == 0,
           std::to_string(mismatches) + " mismatches over " + std::to_string(pairs) + " pairs");
}

// --- criterion 4 -----------------------------------------------------------

void criterion_metric_limits() {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> count(1, 10);
    bool ok = true;
    for (int trial = 0; trial < 100 && ok; ++trial) {
        std::vector<double> scores(count(rng));
        for (auto& s : scores) s = unit(rng);
        const double hi = *std::max_element(scores.begin(), scores.end());
        const double lo = *std::min_element(scores.begin(), scores.end());
        double mean = 0.0;
        for (double s : scores) mean += s;
        mean /= static_cast<double>(scores.size());

        ok = ok && std::abs(soft_max_aggregate(scores, 1e-6, Aggregator::Boltzmann) - hi) < 1e-6;
        ok = ok && std::abs(soft_max_aggregate(scores, 1e6, Aggregator::Boltzmann) - mean) < 1e-6;
        for (double tau : {1e-6, 0.05, 1.0, 1e6}) {
            const double v = soft_max_aggregate(scores, tau, Aggregator::Boltzmann);
            ok = ok && v >= lo - 1e-12 && v <= hi + 1e-12;
        }
    }

    const Lexicon& lex = fixture_lexicon();
    Sentence x = tokenize("Do not postpone what you seek to do .");
    Sentence y = tokenize("Do not defer what you seek to accomplish .");
    Sentence observed = tokenize("Do not delay what you seek to accomplish .");
    MetricConfig cfg;
    cfg.tau = 1e-6;
    ScoreReport r = score(x, y, {observed}, std::nullopt, std::nullopt, cfg, lex);
    ok = ok && std::abs(r.aggregate - 1.0) < 1e-6;

    report(4, "metric temperature limits", ok);
}

// --- criterion 5 -----------------------------------------------------------

void criterion_policy_limits() {
    const Lexicon& lex = fixture_lexicon();
    Sentence x = tokenize("Do not postpone what you seek to do .");
    std::vector<Sentence> refs = {tokenize("Do not delay what you seek to accomplish .")};

    bool ok = true;
    std::string detail;

    {
        PolicyConfig pcfg;
        pcfg.beta = 1e6;
        MetricConfig mcfg;
        mcfg.k_samples = 0;
        SearchResult r =
            search(x, {ParaphraseType::SamePolaritySubstitution}, refs, pcfg, mcfg, lex);
        EditPolicy ref = r.final_policy.reference();
        for (std::size_t i = 0; i < ref.action_probs.size(); ++i) {
            if (std::abs(r.final_policy.action_probs[i] - ref.action_probs[i]) >= 1e-3) {
                ok = false;
                detail = "beta limit violated";
            }
        }
    }

    {
        PolicyConfig pcfg;
        pcfg.beta = 0.0;
        pcfg.gamma = 3.0;
        MetricConfig mcfg;
        mcfg.k_samples = 0;
        SearchResult r = search(x, {ParaphraseType::SamePolaritySubstitution},
                                {sentence_from_tokens({"qqq", "zzz"})}, pcfg, mcfg, lex);
        EditPolicy ref = r.final_policy.reference();
        for (std::size_t i = 0; i < ref.action_probs.size(); ++i) {
            if (std::abs(r.final_policy.action_probs[i] - ref.action_probs[i]) >= 1e-3) {
                ok = false;
                detail = "entropy limit violated";
            }
        }
    }

    {
        const std::vector<std::pair<std::string, std::vector<ParaphraseType>>> cases = {
            {"Do not postpone what you seek to do .",
             {ParaphraseType::SamePolaritySubstitution, ParaphraseType::NegationSwitch}},
            {"I went to the party .",
             {ParaphraseType::SamePolaritySubstitution, ParaphraseType::InflectionalChange}},
            {"The boy kicked the ball .",
             {ParaphraseType::SamePolaritySubstitution, ParaphraseType::AdditionDeletion}},
        };
        for (const auto& [text, types] : cases) {
            Sentence src = tokenize(text);
            PolicyConfig pcfg;
            MetricConfig mcfg;
            mcfg.k_samples = 0;
            std::vector<AtomicEdit> support;
            std::set<ParaphraseType> type_set(types.begin(), types.end());
            for (auto t : types) {
                auto edits = enumerate_candidate_edits(src, t, lex);
                support.insert(support.end(), edits.begin(), edits.end());
            }
            if (support.empty() || support.size() > 50) {
                ok = false;
                detail = "fixture case support out of range";
                continue;
            }
            Trajectory oracle = exhaustive_best(src, support, pcfg.horizon, refs, mcfg, lex);
            SearchResult r = search(src, type_set, refs, pcfg, mcfg, lex);
            if (r.best.reward < 0.99 * oracle.reward) {
                ok = false;
                detail = "search below 0.99x exhaustive optimum on: " + text;
            }
        }
    }

    report(5, "policy limiting behavior", ok, detail);
}

// --- criterion 6 -----------------------------------------------------------

BucketPartition full_coverage_partition(const Lexicon& lex) {
    std::map<std::string, int> table;
    for (const auto& [id, members] : lex.synsets()) {
        int next = 0;
        for (const auto& lemma : members) {
            if (!table.count(lemma)) table[lemma] = next;
            next = 1 - next;
        }
    }
    for (const auto& lemma : lex.all_lemmas()) {
        if (!table.count(lemma)) table[lemma] = 0;
    }
    return BucketPartition::from_table(std::move(table));
}

void criterion_codec() {
    const Lexicon& lex = fixture_lexicon();
    BucketPartition part = full_coverage_partition(lex);
    std::vector<Sentence> corpus = fixture_corpus();

    bool ok = true;
    std::string detail;
    std::size_t exhaustive_checks = 0;

    for (const auto& s : corpus) {
        const std::size_t cap = capacity(s, lex, part);
        const std::size_t limit = std::min<std::size_t>(cap, 4);
        for (std::size_t len = 0; len <= limit; ++len) {
            for (std::size_t v = 0; v < (std::size_t{1} << len); ++v) {
                SecretMessage m;
                for (std::size_t b = len; b-- > 0;) {
                    m.bits.push_back(static_cast<int>((v >> b) & 1));
                }
                Sentence coded = encode(s, m, lex, part);
                ++exhaustive_checks;
                if (!(decode(coded, len, lex, part) == m)) {
                    ok = false;
                    detail = "round trip failed on: " + detokenize(s);
                }
                DetectionReport r = detect(s, coded, lex);
                for (const auto& e : r.edits) {
                    if (e.ptype != ParaphraseType::SamePolaritySubstitution) {
                        ok = false;
                        detail = "non-substitution edit after encoding: " + to_string(e.ptype);
                    }
                }
            }
        }
    }

    std::mt19937_64 rng(6021);
    std::vector<const Sentence*> usable;
    for (const auto& s : corpus) {
        if (capacity(s, lex, part) > 0) usable.push_back(&s);
    }
    for (int trial = 0; trial < 1000 && ok && !usable.empty(); ++trial) {
        const Sentence& s = *usable[rng() % usable.size()];
        const std::size_t cap = capacity(s, lex, part);
        std::uniform_int_distribution<std::size_t> len(0, cap);
        SecretMessage m;
        const std::size_t n = len(rng);
        for (std::size_t b = 0; b < n; ++b) m.bits.push_back(static_cast<int>(rng() & 1));
        if (!(decode(encode(s, m, lex, part), n, lex, part) == m)) {
            ok = false;
            detail = "randomized round trip failed on: " + detokenize(s);
        }
    }

    report(6, "codec exactness", ok && exhaustive_checks > 0, detail);
}

// --- criterion 7 -----------------------------------------------------------

void criterion_voting_law() {
    const Lexicon& lex = fixture_lexicon();
    // Two-member synset slot: the single-copy flip probability equals p_flip.
    BucketPartition part = BucketPartition::from_table({{"do", 0}, {"accomplish", 1}});
    Sentence s = tokenize("Do it .");
    std::vector<Sentence> carriers = {s, s, s};
    ChannelReport r = simulate_channel(carriers, SecretMessage::from_string("1"), 0.2, 3, 10000,
                                       777777, lex, part);
    const double expected = 0.104;
    const double sigma = std::sqrt(expected * (1.0 - expected) / 10000.0);
    bool ok = std::abs(r.per_bit_error - expected) <= 3.0 * sigma;
    ok = ok && std::abs(r.analytic_per_bit_error - expected) < 1e-9;

    for (double q : {0.1, 0.2, 0.3}) {
        for (std::size_t k : {std::size_t{3}, std::size_t{5}}) {
            ok = ok && majority_error(q, k) < q;
        }
    }

    std::ostringstream detail;
    detail << "per_bit_error=" << r.per_bit_error << " expected " << expected << " (3 sigma "
           << 3.0 * sigma << ")";
    report(7, "majority voting law", ok, detail.str());
}

// --- criterion 8 -----------------------------------------------------------

std::uint64_t file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return fnv1a64(buffer.str());
}

bool rerun_identical(const std::string& args, const std::string& tag) {
    const std::string out_a = "accept_" + tag + "_a.jsonl";
    const std::string out_b = "accept_" + tag + "_b.jsonl";
    const std::string base = std::string(PTK_CLI_PATH) + " --lexicon " + PTK_DATA_DIR
                             "/lexicon.tsv ";
    const std::string quiet = " > /dev/null 2>&1";
    int rc_a = std::system((base + args + " -o " + out_a + quiet).c_str());
    int rc_b = std::system((base + args + " -o " + out_b + quiet).c_str());
    bool same = rc_a == rc_b && file_hash(out_a) == file_hash(out_b);
    std::remove(out_a.c_str());
    std::remove(out_b.c_str());
    return same;
}

void criterion_cli_determinism() {
    // Build a one-record apply fixture whose fingerprint matches the library.
    Sentence b1 = tokenize("Do not postpone what you seek to do .");
    AtomicEdit e1;
    e1.action = EditAction::Sub;
    e1.src_span = {2, 3};
    e1.lemma = "delay";
    e1.declared_type = ParaphraseType::SamePolaritySubstitution;
    AtomicEdit e2 = e1;
    e2.src_span = {7, 8};
    e2.lemma = "accomplish";
    nlohmann::json script = io::script_to_json(make_script(b1, {e1, e2}));
    script["id"] = "b1";
    io::write_jsonl("accept_sentences.jsonl",
                    {nlohmann::json{{"id", "b1"}, {"text", detokenize(b1)}}});
    io::write_jsonl("accept_scripts.jsonl", {script});

    bool ok = true;
    std::string detail;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"apply", "apply --sentences accept_sentences.jsonl --scripts accept_scripts.jsonl"},
        {"detect", std::string("detect --pairs ") + PTK_DATA_DIR "/pairs.jsonl"},
        {"score", std::string("score --pairs ") + PTK_DATA_DIR "/score.jsonl --seed 42"},
        {"search", std::string("search --sources ") + PTK_DATA_DIR
                       "/search.jsonl --iterations 5 --rollouts 16 --seed 42"},
        {"stego",
         std::string("stego simulate --sentences ") + PTK_DATA_DIR
             "/corpus.jsonl --bits 1 --p-flip 0.3 --k-votes 3 --trials 200 --seed 7"},
        {"suite", std::string("suite --prompts ") + PTK_DATA_DIR "/prompts.jsonl"},
    };
    for (const auto& [tag, args] : commands) {
        if (!rerun_identical(args, tag)) {
            ok = false;
            detail = "rerun differed for: " + tag;
        }
    }
    std::remove("accept_sentences.jsonl");
    std::remove("accept_scripts.jsonl");
    report(8, "CLI rerun determinism", ok, detail);
}

}  // namespace

int main() {
    run(1, "worked-example fidelity", criterion_fidelity);
    run(2, "round-trip detection suite", criterion_round_trip);
    run(3, "alignment oracle equivalence", criterion_alignment_oracle);
    run(4, "metric temperature limits", criterion_metric_limits);
    run(5, "policy limiting behavior", criterion_policy_limits);
    run(6, "codec exactness", criterion_codec);
    run(7, "majority voting law", criterion_voting_law);
    run(8, "CLI rerun determinism", criterion_cli_determinism);
    if (failures != 0) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
