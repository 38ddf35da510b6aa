#include "ptk/taxonomy.hpp"

#include <algorithm>
#include <cctype>

#include "ptk/errors.hpp"

namespace ptk {

namespace {

Token mk_token(const std::string& surface) {
    Token t;
    t.surface = surface;
    t.norm = lowercase(surface);
    t.is_word = !is_punctuation_only(surface);
    return t;
}

void reindex(Sentence& s) {
    for (std::size_t i = 0; i < s.tokens.size(); ++i) s.tokens[i].index = i;
}

void set_surface(Token& t, const std::string& surface) {
    t.surface = surface;
    t.norm = lowercase(surface);
    t.is_word = !is_punctuation_only(surface);
}

bool starts_uppercase(const std::string& s) {
    return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])) != 0;
}

void uppercase_first(Token& t) {
    if (t.surface.empty()) return;
    std::string surf = t.surface;
    surf[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(surf[0])));
    set_surface(t, surf);
}

void lowercase_first(Token& t) {
    if (t.surface.empty()) return;
    std::string surf = t.surface;
    surf[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(surf[0])));
    set_surface(t, surf);
}

void check_bounds(const Sentence& s, const Span& sp) {
    if (sp.start > sp.end || sp.end > s.size()) {
        throw SpanOutOfBounds(sp.start, sp.end, s.size());
    }
}

// Index of the first negator token inside the span, if any.
std::optional<std::size_t> negator_in(const Sentence& s, const Span& sp, const Lexicon& lex) {
    for (std::size_t i = sp.start; i < sp.end; ++i) {
        if (lex.is_negator(s.tokens[i].norm)) return i;
    }
    return std::nullopt;
}

}  // namespace

TypeFamily family(ParaphraseType t) {
    switch (t) {
        case ParaphraseType::DerivationalChange:
        case ParaphraseType::InflectionalChange:
            return TypeFamily::Morphology;
        case ParaphraseType::SamePolaritySubstitution:
        case ParaphraseType::OppositePolaritySubstitution:
        case ParaphraseType::SyntheticAnalyticSubstitution:
            return TypeFamily::Lexicon;
        case ParaphraseType::ChangeOfOrder:
        case ParaphraseType::SubordinationNesting:
        case ParaphraseType::DiathesisVoiceChange:
        case ParaphraseType::NegationSwitch:
            return TypeFamily::Syntax;
        case ParaphraseType::PunctuationChange:
            return TypeFamily::Discourse;
        case ParaphraseType::SemanticChange:
            return TypeFamily::Semantics;
        case ParaphraseType::AdditionDeletion:
            return TypeFamily::Others;
    }
    return TypeFamily::Others;
}

std::string to_string(ParaphraseType t) {
    switch (t) {
        case ParaphraseType::DerivationalChange: return "DerivationalChange";
        case ParaphraseType::InflectionalChange: return "InflectionalChange";
        case ParaphraseType::SamePolaritySubstitution: return "SamePolaritySubstitution";
        case ParaphraseType::OppositePolaritySubstitution: return "OppositePolaritySubstitution";
        case ParaphraseType::SyntheticAnalyticSubstitution: return "SyntheticAnalyticSubstitution";
        case ParaphraseType::ChangeOfOrder: return "ChangeOfOrder";
        case ParaphraseType::SubordinationNesting: return "SubordinationNesting";
        case ParaphraseType::DiathesisVoiceChange: return "DiathesisVoiceChange";
        case ParaphraseType::NegationSwitch: return "NegationSwitch";
        case ParaphraseType::PunctuationChange: return "PunctuationChange";
        case ParaphraseType::SemanticChange: return "SemanticChange";
        case ParaphraseType::AdditionDeletion: return "AdditionDeletion";
    }
    return "?";
}

std::string to_string(TypeFamily f) {
    switch (f) {
        case TypeFamily::Morphology: return "Morphology";
        case TypeFamily::Lexicon: return "Lexicon";
        case TypeFamily::Syntax: return "Syntax";
        case TypeFamily::Discourse: return "Discourse";
        case TypeFamily::Semantics: return "Semantics";
        case TypeFamily::Others: return "Others";
    }
    return "?";
}

const std::vector<ParaphraseType>& all_paraphrase_types() {
    static const std::vector<ParaphraseType> types = {
        ParaphraseType::DerivationalChange,
        ParaphraseType::InflectionalChange,
        ParaphraseType::SamePolaritySubstitution,
        ParaphraseType::OppositePolaritySubstitution,
        ParaphraseType::SyntheticAnalyticSubstitution,
        ParaphraseType::ChangeOfOrder,
        ParaphraseType::SubordinationNesting,
        ParaphraseType::DiathesisVoiceChange,
        ParaphraseType::NegationSwitch,
        ParaphraseType::PunctuationChange,
        ParaphraseType::SemanticChange,
        ParaphraseType::AdditionDeletion,
    };
    return types;
}

std::optional<ParaphraseType> parse_paraphrase_type(const std::string& name) {
    for (auto t : all_paraphrase_types()) {
        if (to_string(t) == name) return t;
    }
    return std::nullopt;
}

std::string to_string(EditAction a) {
    switch (a) {
        case EditAction::Sub: return "SUB";
        case EditAction::Negate: return "NEGATE";
        case EditAction::VoiceChange: return "VOICE_CHANGE";
        case EditAction::Reorder: return "REORDER";
        case EditAction::Delete: return "DELETE";
        case EditAction::Insert: return "INSERT";
        case EditAction::Inflect: return "INFLECT";
    }
    return "?";
}

std::optional<EditAction> parse_edit_action(const std::string& name) {
    static const EditAction actions[] = {
        EditAction::Sub,     EditAction::Negate, EditAction::VoiceChange, EditAction::Reorder,
        EditAction::Delete,  EditAction::Insert, EditAction::Inflect,
    };
    for (auto a : actions) {
        if (to_string(a) == name) return a;
    }
    return std::nullopt;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t fingerprint(const Sentence& s) {
    std::string joined;
    for (const auto& t : s.tokens) {
        joined += t.surface;
        joined.push_back('\x1f');
    }
    return fnv1a64(joined);
}

bool action_compatible(EditAction a, ParaphraseType t) {
    switch (a) {
        case EditAction::Sub:
            return t == ParaphraseType::SamePolaritySubstitution ||
                   t == ParaphraseType::OppositePolaritySubstitution ||
                   t == ParaphraseType::SyntheticAnalyticSubstitution ||
                   t == ParaphraseType::SemanticChange;
        case EditAction::Negate:
            return t == ParaphraseType::NegationSwitch;
        case EditAction::VoiceChange:
            return t == ParaphraseType::DiathesisVoiceChange;
        case EditAction::Reorder:
            return t == ParaphraseType::ChangeOfOrder;
        case EditAction::Delete:
        case EditAction::Insert:
            return t == ParaphraseType::AdditionDeletion ||
                   t == ParaphraseType::SubordinationNesting ||
                   t == ParaphraseType::PunctuationChange;
        case EditAction::Inflect:
            return t == ParaphraseType::InflectionalChange ||
                   t == ParaphraseType::DerivationalChange;
    }
    return false;
}

Span effective_span(const AtomicEdit& e) {
    Span sp = e.src_span;
    if (e.second_span) {
        sp.start = std::min(sp.start, e.second_span->start);
        sp.end = std::max(sp.end, e.second_span->end);
    }
    return sp;
}

long edit_delta(const Sentence& s, const AtomicEdit& e, const Lexicon& lex) {
    switch (e.action) {
        case EditAction::Sub:
        case EditAction::Inflect:
        case EditAction::Reorder:
            return 0;
        case EditAction::Delete:
            return -static_cast<long>(e.src_span.length());
        case EditAction::Insert:
            return static_cast<long>(e.insert_tokens.size());
        case EditAction::VoiceChange:
            return 2;  // adds the auxiliary and "by"
        case EditAction::Negate:
            return negator_in(s, e.src_span, lex) ? -1 : 1;
    }
    return 0;
}

Sentence apply_edit(const Sentence& s, const AtomicEdit& e, const Lexicon& lex) {
    if (!action_compatible(e.action, e.declared_type)) {
        throw InvalidEdit("action " + to_string(e.action) + " cannot carry type " +
                          to_string(e.declared_type));
    }
    check_bounds(s, e.src_span);
    if (e.second_span) check_bounds(s, *e.second_span);

    Sentence out = s;
    const Span region = effective_span(e);
    const bool region_at_start = region.start == 0 && !s.tokens.empty() &&
                                 starts_uppercase(s.tokens[0].surface);

    switch (e.action) {
        case EditAction::Sub: {
            if (e.src_span.length() != 1) throw InvalidEdit("SUB span must cover one token");
            const Token& old = s.tokens[e.src_span.start];
            if (!e.force && !lex.share_synset(old.norm, e.lemma)) {
                throw IncompatibleSubstitution(old.norm, e.lemma);
            }
            set_surface(out.tokens[e.src_span.start], e.lemma);
            break;
        }
        case EditAction::Inflect: {
            if (e.src_span.length() != 1) throw InvalidEdit("INFLECT span must cover one token");
            const Token& old = s.tokens[e.src_span.start];
            std::string replacement;
            if (e.declared_type == ParaphraseType::DerivationalChange) {
                if (!lex.are_derivations(old.norm, e.lemma)) {
                    throw InvalidEdit("'" + e.lemma + "' is not a derivation of '" + old.norm + "'");
                }
                replacement = e.lemma;
            } else {
                auto lemma = lex.verb_lemma_of(old.norm);
                if (!lemma) throw UnknownVerbForm("no verb table entry covers '" + old.norm + "'");
                const VerbForms* forms = lex.verb_forms(*lemma);
                if (e.lemma == "base") replacement = *lemma;
                else if (e.lemma == "past") replacement = forms->past;
                else if (e.lemma == "past_participle") replacement = forms->past_participle;
                else if (e.lemma == "gerund") replacement = forms->gerund;
                else if (e.lemma == "third_person") replacement = forms->third_person;
                else throw UnknownVerbForm("unknown verb form name: " + e.lemma);
            }
            set_surface(out.tokens[e.src_span.start], replacement);
            break;
        }
        case EditAction::Negate: {
            auto neg = negator_in(s, e.src_span, lex);
            if (neg) {
                out.tokens.erase(out.tokens.begin() + static_cast<std::ptrdiff_t>(*neg));
            } else if (e.src_span.length() == 1 &&
                       lex.is_verb_form(s.tokens[e.src_span.start].norm)) {
                out.tokens.insert(out.tokens.begin() + static_cast<std::ptrdiff_t>(e.src_span.start),
                                  mk_token("not"));
            } else {
                throw TemplateMismatch("NEGATE span holds neither a negator nor a single verb");
            }
            break;
        }
        case EditAction::Delete: {
            out.tokens.erase(out.tokens.begin() + static_cast<std::ptrdiff_t>(e.src_span.start),
                             out.tokens.begin() + static_cast<std::ptrdiff_t>(e.src_span.end));
            break;
        }
        case EditAction::Insert: {
            if (!e.src_span.empty()) throw InvalidEdit("INSERT span must be empty");
            if (e.insert_tokens.empty()) throw InvalidEdit("INSERT payload must be non-empty");
            std::vector<Token> payload;
            payload.reserve(e.insert_tokens.size());
            for (const auto& surf : e.insert_tokens) payload.push_back(mk_token(surf));
            out.tokens.insert(out.tokens.begin() + static_cast<std::ptrdiff_t>(e.src_span.start),
                              payload.begin(), payload.end());
            break;
        }
        case EditAction::Reorder: {
            if (!e.second_span) throw InvalidEdit("REORDER needs a second span");
            Span a = e.src_span;
            Span b = *e.second_span;
            if (a.start > b.start) std::swap(a, b);
            if (a.overlaps(b)) throw InvalidEdit("REORDER spans overlap");
            std::vector<Token> rebuilt;
            rebuilt.reserve(s.size());
            rebuilt.insert(rebuilt.end(), s.tokens.begin(),
                           s.tokens.begin() + static_cast<std::ptrdiff_t>(a.start));
            rebuilt.insert(rebuilt.end(), s.tokens.begin() + static_cast<std::ptrdiff_t>(b.start),
                           s.tokens.begin() + static_cast<std::ptrdiff_t>(b.end));
            rebuilt.insert(rebuilt.end(), s.tokens.begin() + static_cast<std::ptrdiff_t>(a.end),
                           s.tokens.begin() + static_cast<std::ptrdiff_t>(b.start));
            rebuilt.insert(rebuilt.end(), s.tokens.begin() + static_cast<std::ptrdiff_t>(a.start),
                           s.tokens.begin() + static_cast<std::ptrdiff_t>(a.end));
            rebuilt.insert(rebuilt.end(), s.tokens.begin() + static_cast<std::ptrdiff_t>(b.end),
                           s.tokens.end());
            out.tokens = std::move(rebuilt);
            break;
        }
        case EditAction::VoiceChange: {
            if (!e.second_span) throw TemplateMismatch("VOICE_CHANGE needs both noun-phrase spans");
            const Span np1 = e.src_span;
            const Span np2 = *e.second_span;
            if (np1.empty() || np2.empty() || np2.start != np1.end + 1) {
                throw TemplateMismatch("expected [NP1][V][NP2] with one verb between the spans");
            }
            const Token& verb = s.tokens[np1.end];
            auto lemma = lex.verb_lemma_of(verb.norm);
            if (!lemma) throw TemplateMismatch("'" + verb.norm + "' is not a known verb form");
            const VerbForms* forms = lex.verb_forms(*lemma);
            if (forms->past != verb.norm) {
                throw TemplateMismatch("'" + verb.norm + "' is not the past form of '" + *lemma +
                                       "'");
            }
            std::vector<Token> rebuilt;
            rebuilt.insert(rebuilt.end(), s.tokens.begin(),
                           s.tokens.begin() + static_cast<std::ptrdiff_t>(np1.start));
            rebuilt.insert(rebuilt.end(), s.tokens.begin() + static_cast<std::ptrdiff_t>(np2.start),
                           s.tokens.begin() + static_cast<std::ptrdiff_t>(np2.end));
            rebuilt.push_back(mk_token("was"));
            rebuilt.push_back(mk_token(forms->past_participle));
            rebuilt.push_back(mk_token("by"));
            rebuilt.insert(rebuilt.end(), s.tokens.begin() + static_cast<std::ptrdiff_t>(np1.start),
                           s.tokens.begin() + static_cast<std::ptrdiff_t>(np1.end));
            rebuilt.insert(rebuilt.end(), s.tokens.begin() + static_cast<std::ptrdiff_t>(np2.end),
                           s.tokens.end());
            out.tokens = std::move(rebuilt);
            break;
        }
    }

    // Capitalization transfer for sentence-initial regions.
    if (region_at_start && !out.tokens.empty()) {
        if (e.action == EditAction::Reorder || e.action == EditAction::VoiceChange) {
            // The former first token moved inward; find it and lowercase it.
            const std::string moved = s.tokens[0].surface;
            for (std::size_t i = 1; i < out.tokens.size(); ++i) {
                if (out.tokens[i].surface == moved) {
                    lowercase_first(out.tokens[i]);
                    break;
                }
            }
        }
        uppercase_first(out.tokens[0]);
    }

    reindex(out);
    out.source_text = detokenize(out);
    return out;
}

EditScript make_script(const Sentence& s, std::vector<AtomicEdit> edits) {
    EditScript script;
    script.source_fingerprint = fingerprint(s);
    script.edits = std::move(edits);
    return script;
}

Sentence apply_script(const Sentence& s, const EditScript& script, const Lexicon& lex) {
    if (script.source_fingerprint != fingerprint(s)) throw FingerprintMismatch();

    for (std::size_t i = 0; i < script.edits.size(); ++i) {
        for (std::size_t j = i + 1; j < script.edits.size(); ++j) {
            Span a = effective_span(script.edits[i]);
            Span b = effective_span(script.edits[j]);
            if (a.overlaps(b)) {
                throw InvalidEdit("edits " + std::to_string(i) + " and " + std::to_string(j) +
                                  " overlap");
            }
        }
    }

    // Apply right-to-left so earlier spans keep their coordinates; empty
    // spans at the same point stay in sequence order.
    std::vector<std::size_t> order(script.edits.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return effective_span(script.edits[a]).start > effective_span(script.edits[b]).start;
    });

    Sentence out = s;
    for (std::size_t idx : order) {
        try {
            out = apply_edit(out, script.edits[idx], lex);
        } catch (const Error& err) {
            throw Error(err.code(), "edit " + std::to_string(idx) + ": " + err.what());
        }
    }
    return out;
}

namespace {

void push_sub(std::vector<AtomicEdit>& out, std::size_t pos, const std::string& lemma, bool force,
              ParaphraseType t) {
    AtomicEdit e;
    e.action = EditAction::Sub;
    e.src_span = {pos, pos + 1};
    e.lemma = lemma;
    e.force = force;
    e.declared_type = t;
    out.push_back(std::move(e));
}

}  // namespace

std::vector<AtomicEdit> enumerate_candidate_edits(const Sentence& s, ParaphraseType t,
                                                  const Lexicon& lex) {
    std::vector<AtomicEdit> out;
    const std::size_t n = s.size();

    switch (t) {
        case ParaphraseType::SamePolaritySubstitution: {
            for (std::size_t i = 0; i < n; ++i) {
                if (!s.tokens[i].is_word) continue;
                for (const auto& syn : lex.synonyms_of(s.tokens[i].norm)) {
                    push_sub(out, i, syn, false, t);
                }
            }
            break;
        }
        case ParaphraseType::OppositePolaritySubstitution: {
            for (std::size_t i = 0; i < n; ++i) {
                if (!s.tokens[i].is_word) continue;
                for (const auto& ant : lex.antonyms_of(s.tokens[i].norm)) {
                    push_sub(out, i, ant, true, t);
                }
            }
            break;
        }
        case ParaphraseType::SyntheticAnalyticSubstitution: {
            for (std::size_t i = 0; i < n; ++i) {
                if (!s.tokens[i].is_word) continue;
                for (const auto& drv : lex.derivations_of(s.tokens[i].norm)) {
                    push_sub(out, i, drv, true, t);
                }
            }
            break;
        }
        case ParaphraseType::SemanticChange:
            // No lexicon relation licenses a SemanticChange; nothing to enumerate.
            break;
        case ParaphraseType::NegationSwitch: {
            bool has_negator = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (lex.is_negator(s.tokens[i].norm)) has_negator = true;
            }
            for (std::size_t i = 0; i < n; ++i) {
                const bool candidate = has_negator ? lex.is_negator(s.tokens[i].norm)
                                                   : (s.tokens[i].is_word &&
                                                      lex.is_verb_form(s.tokens[i].norm));
                if (!candidate) continue;
                AtomicEdit e;
                e.action = EditAction::Negate;
                e.src_span = {i, i + 1};
                e.declared_type = t;
                out.push_back(std::move(e));
            }
            break;
        }
        case ParaphraseType::InflectionalChange: {
            static const char* form_names[] = {"base", "past", "past_participle", "gerund",
                                               "third_person"};
            for (std::size_t i = 0; i < n; ++i) {
                auto lemma = lex.verb_lemma_of(s.tokens[i].norm);
                if (!lemma) continue;
                const VerbForms* f = lex.verb_forms(*lemma);
                const std::string targets[] = {*lemma, f->past, f->past_participle, f->gerund,
                                               f->third_person};
                for (std::size_t k = 0; k < 5; ++k) {
                    if (targets[k] == s.tokens[i].norm) continue;
                    AtomicEdit e;
                    e.action = EditAction::Inflect;
                    e.src_span = {i, i + 1};
                    e.lemma = form_names[k];
                    e.declared_type = t;
                    out.push_back(std::move(e));
                }
            }
            break;
        }
        case ParaphraseType::DerivationalChange: {
            for (std::size_t i = 0; i < n; ++i) {
                if (!s.tokens[i].is_word) continue;
                for (const auto& drv : lex.derivations_of(s.tokens[i].norm)) {
                    AtomicEdit e;
                    e.action = EditAction::Inflect;
                    e.src_span = {i, i + 1};
                    e.lemma = drv;
                    e.declared_type = t;
                    out.push_back(std::move(e));
                }
            }
            break;
        }
        case ParaphraseType::ChangeOfOrder: {
            // Rotate one token across the following two: [a][b c] -> [b c][a].
            for (std::size_t i = 0; i + 3 <= n; ++i) {
                const Token& a = s.tokens[i];
                const Token& b = s.tokens[i + 1];
                const Token& c = s.tokens[i + 2];
                if (!a.is_word || !b.is_word || !c.is_word) continue;
                if (a.norm == b.norm || a.norm == c.norm || b.norm == c.norm) continue;
                AtomicEdit e;
                e.action = EditAction::Reorder;
                e.src_span = {i, i + 1};
                e.second_span = Span{i + 1, i + 3};
                e.declared_type = t;
                out.push_back(std::move(e));
            }
            break;
        }
        case ParaphraseType::DiathesisVoiceChange: {
            for (std::size_t j = 1; j + 1 < n; ++j) {
                auto lemma = lex.verb_lemma_of(s.tokens[j].norm);
                if (!lemma) continue;
                const VerbForms* f = lex.verb_forms(*lemma);
                if (f->past != s.tokens[j].norm) continue;
                bool np1_ok = true;
                for (std::size_t i = 0; i < j; ++i) {
                    if (!s.tokens[i].is_word) np1_ok = false;
                }
                if (!np1_ok) continue;
                std::size_t np2_end = j + 1;
                while (np2_end < n && s.tokens[np2_end].is_word) ++np2_end;
                if (np2_end == j + 1) continue;
                AtomicEdit e;
                e.action = EditAction::VoiceChange;
                e.src_span = {0, j};
                e.second_span = Span{j + 1, np2_end};
                e.declared_type = t;
                out.push_back(std::move(e));
            }
            break;
        }
        case ParaphraseType::PunctuationChange: {
            for (std::size_t i = 0; i < n; ++i) {
                if (s.tokens[i].is_word) continue;
                std::size_t occurrences = 0;
                for (const auto& tok : s.tokens) {
                    if (tok.norm == s.tokens[i].norm) ++occurrences;
                }
                if (occurrences != 1) continue;
                AtomicEdit e;
                e.action = EditAction::Delete;
                e.src_span = {i, i + 1};
                e.declared_type = t;
                out.push_back(std::move(e));
            }
            if (n > 0 && s.tokens[n - 1].surface != ".") {
                AtomicEdit e;
                e.action = EditAction::Insert;
                e.src_span = {n, n};
                e.insert_tokens = {"."};
                e.declared_type = t;
                out.push_back(std::move(e));
            }
            break;
        }
        case ParaphraseType::AdditionDeletion: {
            for (std::size_t i = 0; i < n; ++i) {
                const Token& tok = s.tokens[i];
                if (!tok.is_word || lex.is_negator(tok.norm)) continue;
                std::size_t occurrences = 0;
                for (const auto& other : s.tokens) {
                    if (other.norm == tok.norm) ++occurrences;
                }
                if (occurrences != 1) continue;  // keep the alignment unambiguous
                AtomicEdit e;
                e.action = EditAction::Delete;
                e.src_span = {i, i + 1};
                e.declared_type = t;
                out.push_back(std::move(e));
            }
            break;
        }
        case ParaphraseType::SubordinationNesting:
            // No grammar model; nothing enumerable at this level.
            break;
    }
    return out;
}

}  // namespace ptk
