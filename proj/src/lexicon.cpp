#include "ptk/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ptk/errors.hpp"

namespace ptk {

namespace {

bool valid_lemma(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || c == '\'' || c == '-';
    });
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(s);
    while (std::getline(in, field, sep)) out.push_back(field);
    return out;
}

}  // namespace

Lexicon Lexicon::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open lexicon file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

Lexicon Lexicon::parse(const std::string& contents) {
    Lexicon lex;
    std::istringstream in(contents);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;

        auto fields = split(line, '\t');
        const std::string& kind = fields[0];

        if (kind == "SYN") {
            if (fields.size() != 3) throw ParseError(lineno, "SYN needs id and lemma list");
            const std::string& id = fields[1];
            if (id.empty()) throw ParseError(lineno, "empty synset id");
            if (lex.synset_index_.count(id)) throw DuplicateSynsetId(id);
            auto lemmas = split(fields[2], ',');
            if (lemmas.empty()) throw ParseError(lineno, "synset has no lemmas");
            for (const auto& l : lemmas) {
                if (!valid_lemma(l)) throw ParseError(lineno, "bad lemma: '" + l + "'");
            }
            std::size_t pos = lex.synsets_.size();
            lex.synset_index_[id] = pos;
            for (const auto& l : lemmas) lex.lemma_to_synsets_[l].push_back(pos);
            lex.synsets_.emplace_back(id, std::move(lemmas));
        } else if (kind == "ANT" || kind == "DRV") {
            if (fields.size() != 3) throw ParseError(lineno, kind + " needs two lemmas");
            if (!valid_lemma(fields[1]) || !valid_lemma(fields[2])) {
                throw ParseError(lineno, "bad lemma in " + kind + " record");
            }
            if (fields[1] == fields[2]) throw ParseError(lineno, kind + " self-pair");
            auto& table = (kind == "ANT") ? lex.antonyms_ : lex.derivations_;
            table.emplace_back(fields[1], fields[2]);
        } else if (kind == "NEG") {
            if (fields.size() != 2) throw ParseError(lineno, "NEG needs one lemma");
            if (!valid_lemma(fields[1])) throw ParseError(lineno, "bad lemma in NEG record");
            lex.negators_.insert(fields[1]);
        } else if (kind == "VRB") {
            if (fields.size() != 3) throw ParseError(lineno, "VRB needs lemma and form list");
            if (!valid_lemma(fields[1])) throw ParseError(lineno, "bad lemma in VRB record");
            auto forms = split(fields[2], ',');
            if (forms.size() != 4) {
                throw ParseError(lineno, "VRB needs past,past_participle,gerund,third_person");
            }
            for (const auto& f : forms) {
                if (!valid_lemma(f)) throw ParseError(lineno, "bad verb form: '" + f + "'");
            }
            VerbForms vf{forms[0], forms[1], forms[2], forms[3]};
            lex.verb_forms_[fields[1]] = vf;
            lex.form_to_lemma_.emplace(fields[1], fields[1]);
            lex.form_to_lemma_.emplace(vf.past, fields[1]);
            lex.form_to_lemma_.emplace(vf.past_participle, fields[1]);
            lex.form_to_lemma_.emplace(vf.gerund, fields[1]);
            lex.form_to_lemma_.emplace(vf.third_person, fields[1]);
        } else {
            throw ParseError(lineno, "unknown record kind: " + kind);
        }
    }
    return lex;
}

std::vector<std::string> Lexicon::synonyms_of(const std::string& lemma) const {
    std::vector<std::string> out;
    auto it = lemma_to_synsets_.find(lemma);
    if (it == lemma_to_synsets_.end()) return out;
    for (std::size_t pos : it->second) {
        for (const auto& member : synsets_[pos].second) {
            if (member == lemma) continue;
            if (std::find(out.begin(), out.end(), member) == out.end()) out.push_back(member);
        }
    }
    return out;
}

bool Lexicon::are_antonyms(const std::string& a, const std::string& b) const {
    for (const auto& [x, y] : antonyms_) {
        if ((x == a && y == b) || (x == b && y == a)) return true;
    }
    return false;
}

bool Lexicon::are_derivations(const std::string& a, const std::string& b) const {
    for (const auto& [x, y] : derivations_) {
        if ((x == a && y == b) || (x == b && y == a)) return true;
    }
    return false;
}

bool Lexicon::is_negator(const std::string& lemma) const { return negators_.count(lemma) > 0; }

std::vector<std::string> Lexicon::antonyms_of(const std::string& lemma) const {
    std::vector<std::string> out;
    for (const auto& [x, y] : antonyms_) {
        if (x == lemma) out.push_back(y);
        else if (y == lemma) out.push_back(x);
    }
    return out;
}

std::vector<std::string> Lexicon::derivations_of(const std::string& lemma) const {
    std::vector<std::string> out;
    for (const auto& [x, y] : derivations_) {
        if (x == lemma) out.push_back(y);
        else if (y == lemma) out.push_back(x);
    }
    return out;
}

const std::vector<std::string>* Lexicon::synset(const std::string& id) const {
    auto it = synset_index_.find(id);
    if (it == synset_index_.end()) return nullptr;
    return &synsets_[it->second].second;
}

std::vector<std::string> Lexicon::synsets_of(const std::string& lemma) const {
    std::vector<std::string> out;
    auto it = lemma_to_synsets_.find(lemma);
    if (it == lemma_to_synsets_.end()) return out;
    for (std::size_t pos : it->second) out.push_back(synsets_[pos].first);
    return out;
}

bool Lexicon::share_synset(const std::string& a, const std::string& b) const {
    auto it = lemma_to_synsets_.find(a);
    if (it == lemma_to_synsets_.end()) return false;
    for (std::size_t pos : it->second) {
        const auto& members = synsets_[pos].second;
        if (std::find(members.begin(), members.end(), b) != members.end()) return true;
    }
    return false;
}

const VerbForms* Lexicon::verb_forms(const std::string& lemma) const {
    auto it = verb_forms_.find(lemma);
    return it == verb_forms_.end() ? nullptr : &it->second;
}

std::optional<std::string> Lexicon::verb_lemma_of(const std::string& form) const {
    auto it = form_to_lemma_.find(form);
    if (it == form_to_lemma_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> Lexicon::all_lemmas() const {
    std::vector<std::string> out;
    for (const auto& [id, members] : synsets_) {
        for (const auto& m : members) {
            if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
        }
    }
    return out;
}

}  // namespace ptk
