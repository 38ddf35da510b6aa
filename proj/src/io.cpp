#include "ptk/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "ptk/errors.hpp"

namespace ptk::io {

double round6(double v) {
    return std::round(v * 1e6) / 1e6;
}

json span_to_json(const Span& sp) {
    return json::array({sp.start, sp.end});
}

Span span_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() ||
        !j[1].is_number_unsigned()) {
        throw ParseError(0, "span must be a [start, end] pair of non-negative integers");
    }
    Span sp{j[0].get<std::size_t>(), j[1].get<std::size_t>()};
    if (sp.start > sp.end) throw ParseError(0, "span start exceeds end");
    return sp;
}

json edit_to_json(const AtomicEdit& e) {
    json j;
    j["action"] = to_string(e.action);
    j["span"] = span_to_json(e.src_span);
    j["type"] = to_string(e.declared_type);
    if (!e.lemma.empty()) j["lemma"] = e.lemma;
    if (!e.insert_tokens.empty()) j["tokens"] = e.insert_tokens;
    if (e.second_span) j["span2"] = span_to_json(*e.second_span);
    if (e.force) j["force"] = true;
    return j;
}

AtomicEdit edit_from_json(const json& j) {
    check_keys(j, {"action", "span", "type", "lemma", "tokens", "span2", "force"},
               {"action", "span", "type"});
    AtomicEdit e;
    auto action = parse_edit_action(j["action"].get<std::string>());
    if (!action) throw ParseError(0, "unknown action: " + j["action"].get<std::string>());
    e.action = *action;
    e.src_span = span_from_json(j["span"]);
    auto type = parse_paraphrase_type(j["type"].get<std::string>());
    if (!type) throw ParseError(0, "unknown paraphrase type: " + j["type"].get<std::string>());
    e.declared_type = *type;
    if (j.contains("lemma")) e.lemma = j["lemma"].get<std::string>();
    if (j.contains("tokens")) e.insert_tokens = j["tokens"].get<std::vector<std::string>>();
    if (j.contains("span2")) e.second_span = span_from_json(j["span2"]);
    if (j.contains("force")) e.force = j["force"].get<bool>();
    return e;
}

json script_to_json(const EditScript& s) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(s.source_fingerprint));
    json j;
    j["fingerprint"] = std::string(buf);
    json edits = json::array();
    for (const auto& e : s.edits) edits.push_back(edit_to_json(e));
    j["edits"] = std::move(edits);
    return j;
}

EditScript script_from_json(const json& j) {
    check_keys(j, {"fingerprint", "edits"}, {"fingerprint", "edits"});
    EditScript s;
    s.source_fingerprint =
        std::stoull(j["fingerprint"].get<std::string>(), nullptr, 16);
    for (const auto& e : j["edits"]) s.edits.push_back(edit_from_json(e));
    return s;
}

json detection_to_json(const DetectionReport& r) {
    json edits = json::array();
    for (const auto& e : r.edits) {
        json je;
        je["type"] = to_string(e.ptype);
        je["src_span"] = span_to_json(e.src_span);
        je["tgt_span"] = span_to_json(e.tgt_span);
        je["evidence"] = e.evidence;
        edits.push_back(std::move(je));
    }
    json j;
    j["edits"] = std::move(edits);
    j["is_paraphrase"] = r.is_paraphrase;
    j["coverage"] = round6(r.coverage);
    return j;
}

json score_to_json(const ScoreReport& r) {
    json per = json::array();
    for (const auto& [idx, value] : r.per_candidate) {
        per.push_back(json::array({idx, round6(value)}));
    }
    json j;
    j["per_candidate"] = std::move(per);
    j["aggregate"] = round6(r.aggregate);
    j["span_reward"] = round6(r.span_reward);
    j["span_reward_applied"] = r.span_reward_applied;
    j["total"] = round6(r.total);
    return j;
}

void check_keys(const json& record, const std::vector<std::string>& allowed,
                const std::vector<std::string>& required) {
    if (!record.is_object()) throw ParseError(0, "record is not a JSON object");
    for (const auto& [key, value] : record.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ParseError(0, "unknown field: " + key);
        }
    }
    for (const auto& key : required) {
        if (!record.contains(key)) throw ParseError(0, "missing field: " + key);
    }
}

std::vector<json> read_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open input file: " + path);
    std::vector<json> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            out.push_back(json::parse(line));
        } catch (const json::parse_error& e) {
            throw ParseError(lineno, e.what());
        }
    }
    return out;
}

void write_jsonl(const std::string& path, const std::vector<json>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    for (const auto& r : records) out << dump_line(r) << '\n';
}

std::string dump_line(const json& record) {
    return record.dump();
}

std::optional<GoldSpans> gold_from_json(const json& labels) {
    if (labels.is_null()) return std::nullopt;
    GoldSpans gold;
    for (const auto& l : labels) {
        check_keys(l, {"type", "src_span", "tgt_span"}, {"type", "src_span"});
        auto t = parse_paraphrase_type(l["type"].get<std::string>());
        if (!t) throw ParseError(0, "unknown paraphrase type: " + l["type"].get<std::string>());
        gold.emplace_back(*t, span_from_json(l["src_span"]));
    }
    return gold;
}

}  // namespace ptk::io
