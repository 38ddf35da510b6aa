#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ptk {

struct Token {
    std::string surface;
    std::string norm;  // surface lowercased
    bool is_word = true;
    std::size_t index = 0;
};

// Half-open token-index interval. start == end is a legal insertion point.
struct Span {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t length() const { return end - start; }
    bool empty() const { return start == end; }
    bool overlaps(const Span& other) const {
        return start < other.end && other.start < end;
    }
    bool operator==(const Span& other) const = default;
};

struct Sentence {
    std::vector<Token> tokens;
    std::string source_text;

    std::size_t size() const { return tokens.size(); }
    bool operator==(const Sentence& other) const;
};

// Whitespace split, then leading/trailing punctuation peeled into separate
// tokens and contractions split at the apostrophe ("I'll" -> "I", "'ll").
Sentence tokenize(const std::string& text);

// Single-space join, no space before punctuation tokens.
std::string detokenize(const Sentence& s);

std::vector<Token> slice(const Sentence& s, const Span& sp);

// Build a Sentence directly from pre-tokenized surfaces (test/fixture use).
Sentence sentence_from_tokens(const std::vector<std::string>& surfaces);

std::string lowercase(const std::string& s);
bool is_punctuation_only(const std::string& s);

}  // namespace ptk
