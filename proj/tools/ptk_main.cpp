// Batch command-line surface over the paraphrase-edit toolkit. Every command
// streams JSONL records, emits per-record error objects instead of aborting,
// and is deterministic given its flags and seeds.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptk/detector.hpp"
#include "ptk/errors.hpp"
#include "ptk/io.hpp"
#include "ptk/lexicon.hpp"
#include "ptk/metric.hpp"
#include "ptk/policy.hpp"
#include "ptk/stego.hpp"
#include "ptk/taxonomy.hpp"
#include "ptk/text.hpp"

namespace {

using nlohmann::json;

struct Output {
    std::vector<json> records;
    bool had_errors = false;

    void emit(json record) { records.push_back(std::move(record)); }
    void emit_error(const std::string& id, const ptk::Error& err) {
        json e;
        e["id"] = id;
        e["error"] = {{"code", err.code()}, {"message", err.what()}};
        records.push_back(std::move(e));
        had_errors = true;
    }

    int flush(const std::string& path) const {
        if (path.empty() || path == "-") {
            for (const auto& r : records) std::cout << ptk::io::dump_line(r) << '\n';
        } else {
            ptk::io::write_jsonl(path, records);
        }
        return had_errors ? 1 : 0;
    }
};

std::string record_id(const json& r) {
    if (r.is_object() && r.contains("id") && r["id"].is_string()) return r["id"].get<std::string>();
    if (r.is_object() && r.contains("prompt_id") && r["prompt_id"].is_string()) {
        return r["prompt_id"].get<std::string>();
    }
    return "";
}

ptk::BucketPartition load_partition(const std::string& table_path, std::uint64_t seed) {
    if (table_path.empty()) return ptk::BucketPartition::seeded(seed);
    std::ifstream in(table_path);
    if (!in) throw ptk::ConfigError("cannot open partition table: " + table_path);
    std::map<std::string, int> table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw ptk::ParseError(lineno, "expected lemma<TAB>bucket");
        const std::string lemma = line.substr(0, tab);
        const std::string bucket = line.substr(tab + 1);
        if (bucket != "0" && bucket != "1") throw ptk::ParseError(lineno, "bucket must be 0 or 1");
        table[ptk::lowercase(lemma)] = bucket[0] - '0';
    }
    return ptk::BucketPartition::from_table(std::move(table));
}

ptk::SecretMessage parse_secret(const std::string& bits, const std::string& hex,
                                std::size_t n_bits) {
    if (!bits.empty()) return ptk::SecretMessage::from_string(bits);
    if (hex.empty()) throw ptk::ConfigError("provide --bits or --hex with --n-bits");
    if (n_bits == 0) throw ptk::ConfigError("--hex requires an explicit --n-bits");
    ptk::SecretMessage m;
    for (char c : hex) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw ptk::ConfigError("bad hex digit in secret");
        for (int b = 3; b >= 0; --b) m.bits.push_back((v >> b) & 1);
    }
    if (m.bits.size() < n_bits) throw ptk::ConfigError("hex secret shorter than --n-bits");
    m.bits.resize(n_bits);
    return m;
}

int cmd_apply(const std::string& sentences_path, const std::string& scripts_path,
              const std::string& lexicon_path, const std::string& out_path) {
    const ptk::Lexicon lex = ptk::Lexicon::load(lexicon_path);
    auto sentences = ptk::io::read_jsonl(sentences_path);
    auto scripts = ptk::io::read_jsonl(scripts_path);

    std::map<std::string, json> script_by_id;
    for (const auto& s : scripts) {
        ptk::io::check_keys(s, {"id", "fingerprint", "edits"}, {"id", "fingerprint", "edits"});
        script_by_id[s["id"].get<std::string>()] = s;
    }

    Output out;
    for (const auto& rec : sentences) {
        const std::string id = record_id(rec);
        try {
            ptk::io::check_keys(rec, {"id", "text"}, {"id", "text"});
            auto it = script_by_id.find(id);
            if (it == script_by_id.end()) {
                throw ptk::ConfigError("no script for record id: " + id);
            }
            ptk::Sentence s = ptk::tokenize(rec["text"].get<std::string>());
            ptk::EditScript script = ptk::io::script_from_json(it->second);
            ptk::Sentence result = ptk::apply_script(s, script, lex);
            json o;
            o["id"] = id;
            o["text"] = ptk::detokenize(result);
            out.emit(std::move(o));
        } catch (const ptk::Error& e) {
            out.emit_error(id, e);
        }
    }
    return out.flush(out_path);
}

int cmd_detect(const std::string& pairs_path, const std::string& lexicon_path,
               const std::string& out_path) {
    const ptk::Lexicon lex = ptk::Lexicon::load(lexicon_path);
    Output out;
    for (const auto& rec : ptk::io::read_jsonl(pairs_path)) {
        const std::string id = record_id(rec);
        try {
            ptk::io::check_keys(rec, {"id", "source", "target", "labels"},
                                {"id", "source", "target"});
            ptk::Sentence src = ptk::tokenize(rec["source"].get<std::string>());
            ptk::Sentence tgt = ptk::tokenize(rec["target"].get<std::string>());
            json o = ptk::io::detection_to_json(ptk::detect(src, tgt, lex));
            o["id"] = id;
            out.emit(std::move(o));
        } catch (const ptk::Error& e) {
            out.emit_error(id, e);
        }
    }
    return out.flush(out_path);
}

int cmd_score(const std::string& pairs_path, const std::string& lexicon_path,
              const ptk::MetricConfig& cfg, const std::string& out_path) {
    const ptk::Lexicon lex = ptk::Lexicon::load(lexicon_path);
    Output out;
    double aggregate_sum = 0.0;
    std::size_t scored = 0;
    for (const auto& rec : ptk::io::read_jsonl(pairs_path)) {
        const std::string id = record_id(rec);
        try {
            ptk::io::check_keys(
                rec, {"id", "source", "candidate", "references", "requested_type", "labels"},
                {"id", "source", "candidate", "references"});
            ptk::Sentence x = ptk::tokenize(rec["source"].get<std::string>());
            ptk::Sentence y = ptk::tokenize(rec["candidate"].get<std::string>());
            std::vector<ptk::Sentence> refs;
            for (const auto& r : rec["references"]) {
                refs.push_back(ptk::tokenize(r.get<std::string>()));
            }
            std::optional<ptk::ParaphraseType> requested;
            if (rec.contains("requested_type")) {
                auto t = ptk::parse_paraphrase_type(rec["requested_type"].get<std::string>());
                if (!t) throw ptk::ParseError(0, "unknown requested_type");
                requested = t;
            }
            std::optional<ptk::GoldSpans> gold;
            if (rec.contains("labels")) gold = ptk::io::gold_from_json(rec["labels"]);
            ptk::ScoreReport report = ptk::score(x, y, refs, requested, gold, cfg, lex);
            json o = ptk::io::score_to_json(report);
            o["id"] = id;
            out.emit(std::move(o));
            aggregate_sum += report.aggregate;
            ++scored;
        } catch (const ptk::Error& e) {
            out.emit_error(id, e);
        }
    }
    json mean;
    mean["corpus_mean"] = ptk::io::round6(scored == 0 ? 0.0 : aggregate_sum / scored);
    out.emit(std::move(mean));
    return out.flush(out_path);
}

int cmd_search(const std::string& sources_path, const std::string& lexicon_path,
               const ptk::PolicyConfig& pcfg, const ptk::MetricConfig& mcfg,
               const std::string& out_path) {
    const ptk::Lexicon lex = ptk::Lexicon::load(lexicon_path);
    Output out;
    for (const auto& rec : ptk::io::read_jsonl(sources_path)) {
        const std::string id = record_id(rec);
        try {
            ptk::io::check_keys(rec, {"id", "text", "types", "references"},
                                {"id", "text", "types", "references"});
            ptk::Sentence x = ptk::tokenize(rec["text"].get<std::string>());
            std::set<ptk::ParaphraseType> types;
            for (const auto& t : rec["types"]) {
                auto parsed = ptk::parse_paraphrase_type(t.get<std::string>());
                if (!parsed) throw ptk::ParseError(0, "unknown type: " + t.get<std::string>());
                types.insert(*parsed);
            }
            std::vector<ptk::Sentence> refs;
            for (const auto& r : rec["references"]) {
                refs.push_back(ptk::tokenize(r.get<std::string>()));
            }
            ptk::SearchResult result = ptk::search(x, types, refs, pcfg, mcfg, lex);
            json o;
            o["id"] = id;
            o["best_text"] = ptk::detokenize(result.best.final);
            o["best_reward"] = ptk::io::round6(result.best.reward);
            json actions = json::array();
            for (const auto& a : result.best.actions) actions.push_back(ptk::io::edit_to_json(a));
            o["best_actions"] = std::move(actions);
            json trace = json::array();
            for (double v : result.trace) trace.push_back(ptk::io::round6(v));
            o["trace"] = std::move(trace);
            out.emit(std::move(o));
        } catch (const ptk::Error& e) {
            out.emit_error(id, e);
        }
    }
    return out.flush(out_path);
}

int cmd_stego_encode(const std::string& sentences_path, const std::string& lexicon_path,
                     const ptk::BucketPartition& part, const ptk::SecretMessage& m,
                     const std::string& out_path) {
    const ptk::Lexicon lex = ptk::Lexicon::load(lexicon_path);
    Output out;
    for (const auto& rec : ptk::io::read_jsonl(sentences_path)) {
        const std::string id = record_id(rec);
        try {
            ptk::io::check_keys(rec, {"id", "text"}, {"id", "text"});
            ptk::Sentence s = ptk::tokenize(rec["text"].get<std::string>());
            ptk::Sentence encoded = ptk::encode(s, m, lex, part);
            json o;
            o["id"] = id;
            o["text"] = ptk::detokenize(encoded);
            o["capacity"] = ptk::capacity(s, lex, part);
            out.emit(std::move(o));
        } catch (const ptk::Error& e) {
            out.emit_error(id, e);
        }
    }
    return out.flush(out_path);
}

int cmd_stego_decode(const std::string& sentences_path, const std::string& lexicon_path,
                     const ptk::BucketPartition& part, std::size_t n_bits,
                     const std::string& out_path) {
    const ptk::Lexicon lex = ptk::Lexicon::load(lexicon_path);
    Output out;
    for (const auto& rec : ptk::io::read_jsonl(sentences_path)) {
        const std::string id = record_id(rec);
        try {
            ptk::io::check_keys(rec, {"id", "text"}, {"id", "text"});
            ptk::Sentence s = ptk::tokenize(rec["text"].get<std::string>());
            json o;
            o["id"] = id;
            o["bits"] = ptk::decode(s, n_bits, lex, part).to_string();
            out.emit(std::move(o));
        } catch (const ptk::Error& e) {
            out.emit_error(id, e);
        }
    }
    return out.flush(out_path);
}

int cmd_stego_simulate(const std::string& sentences_path, const std::string& lexicon_path,
                       const ptk::BucketPartition& part, const ptk::SecretMessage& m,
                       double p_flip, std::size_t k_votes, std::size_t trials,
                       std::uint64_t seed, const std::string& out_path) {
    const ptk::Lexicon lex = ptk::Lexicon::load(lexicon_path);
    std::vector<ptk::Sentence> carriers;
    for (const auto& rec : ptk::io::read_jsonl(sentences_path)) {
        ptk::io::check_keys(rec, {"id", "text"}, {"id", "text"});
        carriers.push_back(ptk::tokenize(rec["text"].get<std::string>()));
    }
    ptk::ChannelReport report =
        ptk::simulate_channel(carriers, m, p_flip, k_votes, trials, seed, lex, part);
    Output out;
    json o;
    o["p_flip"] = ptk::io::round6(report.p_flip);
    o["k_votes"] = report.k_votes;
    o["trials"] = report.trials;
    o["per_bit_error"] = ptk::io::round6(report.per_bit_error);
    o["exact_match_rate"] = ptk::io::round6(report.exact_match_rate);
    o["analytic_per_bit_error"] = ptk::io::round6(report.analytic_per_bit_error);
    out.emit(std::move(o));
    return out.flush(out_path);
}

int cmd_suite(const std::string& prompts_path, const std::string& lexicon_path,
              const std::vector<std::string>& type_names, const std::string& out_path) {
    const ptk::Lexicon lex = ptk::Lexicon::load(lexicon_path);
    std::vector<ptk::ParaphraseType> types;
    if (type_names.empty()) {
        types = ptk::all_paraphrase_types();
    } else {
        for (const auto& name : type_names) {
            auto t = ptk::parse_paraphrase_type(name);
            if (!t) throw ptk::ConfigError("unknown paraphrase type: " + name);
            types.push_back(*t);
        }
    }

    Output out;
    for (const auto& rec : ptk::io::read_jsonl(prompts_path)) {
        const std::string id = record_id(rec);
        try {
            ptk::io::check_keys(rec, {"prompt_id", "base_prompt"}, {"prompt_id", "base_prompt"});
            ptk::Sentence base = ptk::tokenize(rec["base_prompt"].get<std::string>());
            json variants = json::array();
            for (auto t : types) {
                auto candidates = ptk::enumerate_candidate_edits(base, t, lex);
                if (candidates.empty()) continue;
                ptk::EditScript script = ptk::make_script(base, {candidates.front()});
                ptk::Sentence variant = ptk::apply_script(base, script, lex);
                json v;
                v["type"] = to_string(t);
                v["text"] = ptk::detokenize(variant);
                v["candidate_count"] = candidates.size();
                v["edits"] = ptk::io::script_to_json(script);
                variants.push_back(std::move(v));
            }
            json o;
            o["prompt_id"] = id;
            o["base_prompt"] = rec["base_prompt"];
            o["variants"] = std::move(variants);
            out.emit(std::move(o));
        } catch (const ptk::Error& e) {
            out.emit_error(id, e);
        }
    }
    return out.flush(out_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"typed paraphrase-edit toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string lexicon_path;
    std::string out_path;
    app.add_option("--lexicon", lexicon_path, "lexicon TSV file")->required();
    app.add_option("-o,--output", out_path, "output JSONL file (default: stdout)");

    // apply
    auto* apply = app.add_subcommand("apply", "apply edit scripts to sentences");
    std::string sentences_path, scripts_path;
    apply->add_option("--sentences", sentences_path, "sentence JSONL ({id, text})")->required();
    apply->add_option("--scripts", scripts_path, "edit-script JSONL ({id, fingerprint, edits})")
        ->required();

    // detect
    auto* detect = app.add_subcommand("detect", "detect typed edits between sentence pairs");
    std::string pairs_path;
    detect->add_option("--pairs", pairs_path, "pair JSONL ({id, source, target})")->required();

    // score
    auto* score = app.add_subcommand("score", "score candidates against reference sets");
    std::string score_pairs;
    ptk::MetricConfig mcfg;
    std::string aggregator_name = "boltzmann";
    score->add_option("--pairs", score_pairs, "records with source, candidate, references")
        ->required();
    score->add_option("--tau", mcfg.tau, "softmax temperature");
    score->add_option("--k", mcfg.k_samples, "proposal sample count");
    score->add_option("--lambda", mcfg.lambda_span, "span reward weight");
    score->add_option("--aggregator", aggregator_name, "boltzmann or logsumexp");
    score->add_option("--seed", mcfg.rng_seed, "proposal sampler seed");

    // search
    auto* search = app.add_subcommand("search", "policy search for high-reward edit sequences");
    std::string sources_path;
    ptk::PolicyConfig pcfg;
    search->add_option("--sources", sources_path, "records with text, types, references")
        ->required();
    search->add_option("--beta", pcfg.beta, "KL weight");
    search->add_option("--gamma", pcfg.gamma, "entropy weight");
    search->add_option("--horizon", pcfg.horizon, "max edits per trajectory");
    search->add_option("--rollouts", pcfg.n_rollouts, "rollouts per iteration");
    search->add_option("--iterations", pcfg.n_iterations, "optimizer iterations");
    search->add_option("--elite-fraction", pcfg.elite_fraction, "elite fraction");
    search->add_option("--seed", pcfg.rng_seed, "search seed");
    search->add_option("--tau", mcfg.tau, "metric temperature");
    search->add_option("--k", mcfg.k_samples, "metric proposal count");
    search->add_option("--metric-seed", mcfg.rng_seed, "metric sampler seed");
    search->add_option("--aggregator", aggregator_name, "boltzmann or logsumexp");

    // stego
    auto* stego = app.add_subcommand("stego", "bucket-partition steganographic codec");
    stego->require_subcommand(1);
    stego->fallthrough();
    std::string bits, hex, partition_table;
    std::size_t n_bits = 0, k_votes = 3, trials = 1000;
    std::uint64_t partition_seed = 0, channel_seed = 42;
    double p_flip = 0.0;
    auto add_partition_flags = [&](CLI::App* sub) {
        sub->add_option("--partition-seed", partition_seed, "seeded-hash partition seed");
        sub->add_option("--partition-table", partition_table, "explicit lemma<TAB>bucket table");
    };
    auto* st_encode = stego->add_subcommand("encode", "embed a secret into carrier sentences");
    st_encode->add_option("--sentences", sentences_path, "carrier JSONL")->required();
    st_encode->add_option("--bits", bits, "secret as a {0,1} string");
    st_encode->add_option("--hex", hex, "secret as hex (needs --n-bits)");
    st_encode->add_option("--n-bits", n_bits, "bit count for --hex");
    add_partition_flags(st_encode);
    auto* st_decode = stego->add_subcommand("decode", "read a secret back out");
    st_decode->add_option("--sentences", sentences_path, "encoded JSONL")->required();
    st_decode->add_option("--n-bits", n_bits, "expected bit count")->required();
    add_partition_flags(st_decode);
    auto* st_sim = stego->add_subcommand("simulate", "paraphrasing noise-channel simulation");
    st_sim->add_option("--sentences", sentences_path, "carrier JSONL")->required();
    st_sim->add_option("--bits", bits, "secret as a {0,1} string");
    st_sim->add_option("--hex", hex, "secret as hex (needs --n-bits)");
    st_sim->add_option("--n-bits", n_bits, "bit count for --hex");
    st_sim->add_option("--p-flip", p_flip, "per-carrier-token substitution probability");
    st_sim->add_option("--k-votes", k_votes, "vote copies (odd)");
    st_sim->add_option("--trials", trials, "Monte-Carlo trials");
    st_sim->add_option("--seed", channel_seed, "channel seed");
    add_partition_flags(st_sim);

    // suite
    auto* suite = app.add_subcommand("suite", "generate typed prompt-perturbation variants");
    std::string prompts_path;
    std::vector<std::string> type_names;
    suite->add_option("--prompts", prompts_path, "prompt JSONL ({prompt_id, base_prompt})")
        ->required();
    suite->add_option("--types", type_names, "paraphrase types to perturb with")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        auto agg = ptk::parse_aggregator(aggregator_name);
        if (!agg) throw ptk::ConfigError("unknown aggregator: " + aggregator_name);
        mcfg.aggregator = *agg;

        if (*apply) return cmd_apply(sentences_path, scripts_path, lexicon_path, out_path);
        if (*detect) return cmd_detect(pairs_path, lexicon_path, out_path);
        if (*score) return cmd_score(score_pairs, lexicon_path, mcfg, out_path);
        if (*search) return cmd_search(sources_path, lexicon_path, pcfg, mcfg, out_path);
        if (*stego) {
            ptk::BucketPartition part = load_partition(partition_table, partition_seed);
            if (*st_encode) {
                return cmd_stego_encode(sentences_path, lexicon_path, part,
                                        parse_secret(bits, hex, n_bits), out_path);
            }
            if (*st_decode) {
                return cmd_stego_decode(sentences_path, lexicon_path, part, n_bits, out_path);
            }
            if (*st_sim) {
                return cmd_stego_simulate(sentences_path, lexicon_path, part,
                                          parse_secret(bits, hex, n_bits), p_flip, k_votes,
                                          trials, channel_seed, out_path);
            }
        }
        if (*suite) return cmd_suite(prompts_path, lexicon_path, type_names, out_path);
    } catch (const ptk::Error& e) {
        std::cerr << "error [" << e.code() << "]: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
