#pragma once

#include <string>
#include <vector>

#include "ptk/lexicon.hpp"
#include "ptk/taxonomy.hpp"
#include "ptk/text.hpp"

namespace ptk {

enum class AlignOpKind { Keep, Replace, Delete, Insert, Move };

struct AlignOp {
    AlignOpKind kind = AlignOpKind::Keep;
    Span src;  // empty for Insert
    Span tgt;  // empty for Delete
};

struct Alignment {
    std::vector<AlignOp> ops;
    // Minimal cost under {KEEP 0, REPLACE 1, DELETE 1, INSERT 1}. Move
    // pairing reshapes ops for classification but leaves the cost as the
    // DP optimum so it stays comparable with an exhaustive oracle.
    unsigned cost = 0;
};

struct DetectedEdit {
    ParaphraseType ptype = ParaphraseType::SemanticChange;
    Span src_span;
    Span tgt_span;
    std::string evidence;
};

struct DetectionReport {
    std::vector<DetectedEdit> edits;
    bool is_paraphrase = false;
    double coverage = 1.0;
};

// Minimal-cost token alignment with deterministic tie-breaking
// (KEEP > REPLACE > DELETE > INSERT) and post-hoc block-move pairing.
Alignment align(const Sentence& src, const Sentence& tgt);

DetectionReport detect(const Sentence& src, const Sentence& tgt, const Lexicon& lex);

// True iff every detectable-typed edit in the script is recovered by the
// detector with the same type at the right source location.
bool round_trip_check(const Sentence& s, const EditScript& script, const Lexicon& lex);

bool is_detectable_type(ParaphraseType t);
bool meaning_preserving_evidence(const std::string& code);
bool polarity_evidence(const std::string& code);

}  // namespace ptk
