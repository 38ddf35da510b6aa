#include "ptk/detector.hpp"

#include <algorithm>

#include "ptk/errors.hpp"

namespace ptk {

namespace {

struct Block {
    std::size_t first_op;   // index of first op in the run
    std::size_t op_count;
    Span span;              // src span for deletes, tgt span for inserts
    std::vector<std::string> norms;
    bool paired = false;
};

std::vector<std::string> norms_of(const Sentence& s) {
    std::vector<std::string> out;
    out.reserve(s.size());
    for (const auto& t : s.tokens) out.push_back(t.norm);
    return out;
}

}  // namespace

Alignment align(const Sentence& src, const Sentence& tgt) {
    const auto a = norms_of(src);
    const auto b = norms_of(tgt);
    const std::size_t n = a.size();
    const std::size_t m = b.size();

    std::vector<std::vector<unsigned>> d(n + 1, std::vector<unsigned>(m + 1, 0));
    for (std::size_t i = 0; i <= n; ++i) d[i][0] = static_cast<unsigned>(i);
    for (std::size_t j = 0; j <= m; ++j) d[0][j] = static_cast<unsigned>(j);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            unsigned sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0u : 1u);
            unsigned del = d[i - 1][j] + 1;
            unsigned ins = d[i][j - 1] + 1;
            d[i][j] = std::min({sub, del, ins});
        }
    }

    // Backtrack with the fixed preference order.
    std::vector<AlignOp> rev;
    std::size_t i = n, j = m;
    while (i > 0 || j > 0) {
        if (i > 0 && j > 0 && a[i - 1] == b[j - 1] && d[i][j] == d[i - 1][j - 1]) {
            rev.push_back({AlignOpKind::Keep, {i - 1, i}, {j - 1, j}});
            --i, --j;
        } else if (i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1] + 1) {
            rev.push_back({AlignOpKind::Replace, {i - 1, i}, {j - 1, j}});
            --i, --j;
        } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
            rev.push_back({AlignOpKind::Delete, {i - 1, i}, {j, j}});
            --i;
        } else {
            rev.push_back({AlignOpKind::Insert, {i, i}, {j - 1, j}});
            --j;
        }
    }

    Alignment out;
    out.cost = d[n][m];
    out.ops.assign(rev.rbegin(), rev.rend());

    // Pair maximal equal-content DELETE/INSERT runs into MOVE ops,
    // leftmost-first.
    std::vector<Block> deletes;
    std::vector<Block> inserts;
    for (std::size_t k = 0; k < out.ops.size(); ++k) {
        auto kind = out.ops[k].kind;
        if (kind != AlignOpKind::Delete && kind != AlignOpKind::Insert) continue;
        auto& list = (kind == AlignOpKind::Delete) ? deletes : inserts;
        std::size_t start = k;
        Block blk;
        blk.first_op = start;
        blk.span = (kind == AlignOpKind::Delete) ? out.ops[k].src : out.ops[k].tgt;
        while (k < out.ops.size() && out.ops[k].kind == kind) {
            const Span& piece = (kind == AlignOpKind::Delete) ? out.ops[k].src : out.ops[k].tgt;
            blk.span.end = piece.end;
            const Span& norm_src = (kind == AlignOpKind::Delete) ? out.ops[k].src : out.ops[k].tgt;
            const auto& seq = (kind == AlignOpKind::Delete) ? a : b;
            blk.norms.push_back(seq[norm_src.start]);
            ++k;
        }
        blk.op_count = k - start;
        --k;
        list.push_back(std::move(blk));
    }

    std::vector<AlignOp> rebuilt;
    std::vector<bool> drop(out.ops.size(), false);
    for (auto& del : deletes) {
        for (auto& ins : inserts) {
            if (ins.paired || ins.norms != del.norms) continue;
            del.paired = ins.paired = true;
            // Replace the delete run with a Move, drop the insert run.
            AlignOp move_op;
            move_op.kind = AlignOpKind::Move;
            move_op.src = del.span;
            move_op.tgt = ins.span;
            out.ops[del.first_op] = move_op;
            for (std::size_t t = 1; t < del.op_count; ++t) drop[del.first_op + t] = true;
            for (std::size_t t = 0; t < ins.op_count; ++t) drop[ins.first_op + t] = true;
            break;
        }
    }
    for (std::size_t k = 0; k < out.ops.size(); ++k) {
        if (!drop[k]) rebuilt.push_back(out.ops[k]);
    }
    out.ops = std::move(rebuilt);
    return out;
}

bool is_detectable_type(ParaphraseType t) {
    switch (t) {
        case ParaphraseType::SamePolaritySubstitution:
        case ParaphraseType::OppositePolaritySubstitution:
        case ParaphraseType::NegationSwitch:
        case ParaphraseType::DerivationalChange:
        case ParaphraseType::InflectionalChange:
        case ParaphraseType::ChangeOfOrder:
        case ParaphraseType::PunctuationChange:
        case ParaphraseType::AdditionDeletion:
            return true;
        default:
            return false;
    }
}

bool meaning_preserving_evidence(const std::string& code) {
    return code == "shared-synset" || code == "derivation-pair" || code == "verb-form-pair" ||
           code == "block-move" || code == "punct-only" || code == "voice-template";
}

bool polarity_evidence(const std::string& code) {
    return code == "antonym-pair" || code == "negator-delete" || code == "negator-insert" ||
           code == "negator-swap";
}

namespace {

DetectedEdit classify_replace(const Token& st, const Token& tt, Span ssp, Span tsp,
                              const Lexicon& lex) {
    DetectedEdit e;
    e.src_span = ssp;
    e.tgt_span = tsp;
    if (lex.share_synset(st.norm, tt.norm)) {
        e.ptype = ParaphraseType::SamePolaritySubstitution;
        e.evidence = "shared-synset";
    } else if (lex.are_antonyms(st.norm, tt.norm)) {
        e.ptype = ParaphraseType::OppositePolaritySubstitution;
        e.evidence = "antonym-pair";
    } else if (lex.is_negator(st.norm) || lex.is_negator(tt.norm)) {
        e.ptype = ParaphraseType::NegationSwitch;
        e.evidence = "negator-swap";
    } else if (lex.are_derivations(st.norm, tt.norm)) {
        e.ptype = ParaphraseType::DerivationalChange;
        e.evidence = "derivation-pair";
    } else if (lex.verb_lemma_of(st.norm) && lex.verb_lemma_of(tt.norm) &&
               *lex.verb_lemma_of(st.norm) == *lex.verb_lemma_of(tt.norm)) {
        e.ptype = ParaphraseType::InflectionalChange;
        e.evidence = "verb-form-pair";
    } else if (!st.is_word && !tt.is_word) {
        e.ptype = ParaphraseType::PunctuationChange;
        e.evidence = "punct-only";
    } else {
        e.ptype = ParaphraseType::SemanticChange;
        e.evidence = "unexplained";
    }
    return e;
}

}  // namespace

DetectionReport detect(const Sentence& src, const Sentence& tgt, const Lexicon& lex) {
    DetectionReport report;

    // A whole-pair voice-template match explains everything at once.
    for (const auto& cand :
         enumerate_candidate_edits(src, ParaphraseType::DiathesisVoiceChange, lex)) {
        Sentence transformed = apply_edit(src, cand, lex);
        if (norms_of(transformed) == norms_of(tgt)) {
            DetectedEdit e;
            e.ptype = ParaphraseType::DiathesisVoiceChange;
            e.src_span = effective_span(cand);
            e.tgt_span = {e.src_span.start, e.src_span.end + 2};
            e.evidence = "voice-template";
            report.edits.push_back(e);
            report.is_paraphrase = true;
            report.coverage = 1.0;
            return report;
        }
    }

    Alignment al = align(src, tgt);

    std::size_t changed_src_tokens = 0;
    std::size_t explained_src_tokens = 0;

    for (const auto& op : al.ops) {
        switch (op.kind) {
            case AlignOpKind::Keep:
                break;
            case AlignOpKind::Move: {
                DetectedEdit e;
                e.ptype = ParaphraseType::ChangeOfOrder;
                e.src_span = op.src;
                e.tgt_span = op.tgt;
                e.evidence = "block-move";
                report.edits.push_back(e);
                changed_src_tokens += op.src.length();
                explained_src_tokens += op.src.length();
                break;
            }
            case AlignOpKind::Replace: {
                DetectedEdit e = classify_replace(src.tokens[op.src.start],
                                                  tgt.tokens[op.tgt.start], op.src, op.tgt, lex);
                changed_src_tokens += 1;
                if (e.evidence != "unexplained") explained_src_tokens += 1;
                report.edits.push_back(std::move(e));
                break;
            }
            case AlignOpKind::Delete: {
                const Token& st = src.tokens[op.src.start];
                DetectedEdit e;
                e.src_span = op.src;
                e.tgt_span = op.tgt;
                if (lex.is_negator(st.norm)) {
                    e.ptype = ParaphraseType::NegationSwitch;
                    e.evidence = "negator-delete";
                } else if (!st.is_word) {
                    e.ptype = ParaphraseType::PunctuationChange;
                    e.evidence = "punct-only";
                } else {
                    e.ptype = ParaphraseType::AdditionDeletion;
                    e.evidence = "content-delete";
                }
                changed_src_tokens += 1;
                explained_src_tokens += 1;
                report.edits.push_back(std::move(e));
                break;
            }
            case AlignOpKind::Insert: {
                const Token& tt = tgt.tokens[op.tgt.start];
                DetectedEdit e;
                e.src_span = op.src;
                e.tgt_span = op.tgt;
                if (lex.is_negator(tt.norm)) {
                    e.ptype = ParaphraseType::NegationSwitch;
                    e.evidence = "negator-insert";
                } else if (!tt.is_word) {
                    e.ptype = ParaphraseType::PunctuationChange;
                    e.evidence = "punct-only";
                } else {
                    e.ptype = ParaphraseType::AdditionDeletion;
                    e.evidence = "content-insert";
                }
                report.edits.push_back(std::move(e));
                break;
            }
        }
    }

    std::stable_sort(report.edits.begin(), report.edits.end(),
                     [](const DetectedEdit& x, const DetectedEdit& y) {
                         if (x.src_span.start != y.src_span.start) {
                             return x.src_span.start < y.src_span.start;
                         }
                         return to_string(x.ptype) < to_string(y.ptype);
                     });

    report.coverage = changed_src_tokens == 0
                          ? 1.0
                          : static_cast<double>(explained_src_tokens) /
                                static_cast<double>(changed_src_tokens);

    std::size_t polarity_flips = 0;
    bool all_accounted = true;
    for (const auto& e : report.edits) {
        if (polarity_evidence(e.evidence)) {
            ++polarity_flips;
        } else if (!meaning_preserving_evidence(e.evidence)) {
            all_accounted = false;
        }
    }
    // Polarity flips must cancel pairwise (double negation); anything
    // unexplained or additive breaks the paraphrase verdict.
    report.is_paraphrase = all_accounted && polarity_flips % 2 == 0;
    return report;
}

bool round_trip_check(const Sentence& s, const EditScript& script, const Lexicon& lex) {
    Sentence result = apply_script(s, script, lex);
    DetectionReport report = detect(s, result, lex);

    for (const auto& e : script.edits) {
        if (!is_detectable_type(e.declared_type)) continue;
        const Span region = effective_span(e);
        bool found = false;
        for (const auto& de : report.edits) {
            if (de.ptype != e.declared_type) continue;
            if (de.src_span == e.src_span) {
                found = true;
                break;
            }
            // A NEGATE that inserts "not" is recovered as an insertion point
            // at the verb's position rather than over the verb itself.
            if (e.action == EditAction::Negate && de.src_span.empty() &&
                de.src_span.start >= region.start && de.src_span.start <= region.end) {
                found = true;
                break;
            }
            // Negator removal inside a wider NEGATE span.
            if (e.action == EditAction::Negate && de.src_span.start >= region.start &&
                de.src_span.end <= region.end) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace ptk
