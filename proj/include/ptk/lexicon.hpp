#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ptk {

struct VerbForms {
    std::string past;
    std::string past_participle;
    std::string gerund;
    std::string third_person;
};

// Immutable lexical knowledge base: synsets, antonym / derivational pairs,
// negators, and verb inflection tables. Loaded from the TSV format documented
// in the README (SYN / ANT / DRV / NEG / VRB records).
class Lexicon {
public:
    Lexicon() = default;

    static Lexicon load(const std::string& path);
    static Lexicon parse(const std::string& contents);

    // Union over all synsets containing `lemma`, minus the lemma itself,
    // in load order. Unknown lemma yields an empty set.
    std::vector<std::string> synonyms_of(const std::string& lemma) const;

    bool are_antonyms(const std::string& a, const std::string& b) const;
    bool are_derivations(const std::string& a, const std::string& b) const;
    bool is_negator(const std::string& lemma) const;

    std::vector<std::string> antonyms_of(const std::string& lemma) const;
    std::vector<std::string> derivations_of(const std::string& lemma) const;

    const std::vector<std::string>* synset(const std::string& id) const;
    // Synset ids containing `lemma`, in load order.
    std::vector<std::string> synsets_of(const std::string& lemma) const;
    bool share_synset(const std::string& a, const std::string& b) const;

    const VerbForms* verb_forms(const std::string& lemma) const;
    // Maps any inflected form (or the lemma itself) back to its lemma.
    std::optional<std::string> verb_lemma_of(const std::string& form) const;
    bool is_verb_form(const std::string& word) const { return verb_lemma_of(word).has_value(); }

    const std::vector<std::pair<std::string, std::vector<std::string>>>& synsets() const {
        return synsets_;
    }
    const std::set<std::string>& negators() const { return negators_; }
    std::vector<std::string> all_lemmas() const;

private:
    // Synsets in file order; lookup index maps id -> position.
    std::vector<std::pair<std::string, std::vector<std::string>>> synsets_;
    std::map<std::string, std::size_t> synset_index_;
    std::map<std::string, std::vector<std::size_t>> lemma_to_synsets_;
    std::vector<std::pair<std::string, std::string>> antonyms_;
    std::vector<std::pair<std::string, std::string>> derivations_;
    std::set<std::string> negators_;
    std::map<std::string, VerbForms> verb_forms_;
    std::map<std::string, std::string> form_to_lemma_;
};

}  // namespace ptk
