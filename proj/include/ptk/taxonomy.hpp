#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptk/lexicon.hpp"
#include "ptk/text.hpp"

namespace ptk {

enum class ParaphraseType {
    DerivationalChange,
    InflectionalChange,
    SamePolaritySubstitution,
    OppositePolaritySubstitution,
    SyntheticAnalyticSubstitution,
    ChangeOfOrder,
    SubordinationNesting,
    DiathesisVoiceChange,
    NegationSwitch,
    PunctuationChange,
    SemanticChange,
    AdditionDeletion,
};

enum class TypeFamily { Morphology, Lexicon, Syntax, Discourse, Semantics, Others };

TypeFamily family(ParaphraseType t);
std::string to_string(ParaphraseType t);
std::string to_string(TypeFamily f);
std::optional<ParaphraseType> parse_paraphrase_type(const std::string& name);
const std::vector<ParaphraseType>& all_paraphrase_types();

enum class EditAction { Sub, Negate, VoiceChange, Reorder, Delete, Insert, Inflect };

std::string to_string(EditAction a);
std::optional<EditAction> parse_edit_action(const std::string& name);

// One span-anchored transformation. Payload fields are action-specific:
//   Sub       lemma = replacement
//   Insert    insert_tokens = tokens to insert at an empty span
//   Reorder   second_span = the other block to swap with
//   Inflect   lemma = target verb-form name (InflectionalChange) or the
//             derivation partner (DerivationalChange)
//   VoiceChange  src_span = first noun phrase, second_span = second one,
//                the verb sits between them
struct AtomicEdit {
    EditAction action = EditAction::Sub;
    Span src_span;
    std::string lemma;
    std::vector<std::string> insert_tokens;
    std::optional<Span> second_span;
    bool force = false;  // Sub only: skip the shared-synset check
    ParaphraseType declared_type = ParaphraseType::SamePolaritySubstitution;

    bool operator==(const AtomicEdit& other) const = default;
};

struct EditScript {
    std::uint64_t source_fingerprint = 0;
    std::vector<AtomicEdit> edits;
};

std::uint64_t fingerprint(const Sentence& s);
std::uint64_t fnv1a64(const std::string& data);

bool action_compatible(EditAction a, ParaphraseType t);

// Full source region touched by the edit (covers both spans of two-span actions).
Span effective_span(const AtomicEdit& e);

// Token-count change the edit will cause; fully determined by action,
// payload, and (for Negate) the presence of a negator inside the span.
long edit_delta(const Sentence& s, const AtomicEdit& e, const Lexicon& lex);

Sentence apply_edit(const Sentence& s, const AtomicEdit& e, const Lexicon& lex);
Sentence apply_script(const Sentence& s, const EditScript& script, const Lexicon& lex);

EditScript make_script(const Sentence& s, std::vector<AtomicEdit> edits);

// Every atomic edit of declared type `t` applicable to `s` under `lex`,
// position ascending then lexicon order. Each returned edit applies cleanly.
std::vector<AtomicEdit> enumerate_candidate_edits(const Sentence& s, ParaphraseType t,
                                                  const Lexicon& lex);

}  // namespace ptk
