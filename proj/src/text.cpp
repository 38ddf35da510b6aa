#include "ptk/text.hpp"

#include <algorithm>
#include <cctype>

#include "ptk/errors.hpp"

namespace ptk {

namespace {

// Punctuation inventory, as UTF-8 strings so the em/en dashes work.
const std::vector<std::string>& punct_marks() {
    static const std::vector<std::string> marks = {
        ".", ",", ";", ":", "!", "?", "\"", "'", "(", ")",
        "\xe2\x80\x94",  // em dash
        "\xe2\x80\x93",  // en dash
        "-",
    };
    return marks;
}

bool starts_with_mark(const std::string& s, std::size_t pos, std::string* mark) {
    for (const auto& m : punct_marks()) {
        if (s.compare(pos, m.size(), m) == 0) {
            *mark = m;
            return true;
        }
    }
    return false;
}

bool is_space_byte(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

Token make_token(std::string surface, std::size_t index) {
    Token t;
    t.norm = lowercase(surface);
    t.is_word = !is_punctuation_only(surface);
    t.surface = std::move(surface);
    t.index = index;
    return t;
}

// Emit the tokens of one whitespace-delimited chunk.
void emit_chunk(const std::string& chunk, std::vector<std::string>& out) {
    std::size_t begin = 0;
    std::size_t end = chunk.size();

    std::vector<std::string> leading;
    std::string mark;
    while (begin < end && starts_with_mark(chunk, begin, &mark)) {
        leading.push_back(mark);
        begin += mark.size();
    }
    std::vector<std::string> trailing;
    while (end > begin) {
        bool matched = false;
        for (const auto& m : punct_marks()) {
            if (end >= begin + m.size() && chunk.compare(end - m.size(), m.size(), m) == 0) {
                trailing.push_back(m);
                end -= m.size();
                matched = true;
                break;
            }
        }
        if (!matched) break;
    }

    for (auto& m : leading) out.push_back(std::move(m));

    // Core: split contractions at internal apostrophes, apostrophe attaching
    // to the tail ("I'll" -> "I", "'ll").
    if (begin < end) {
        std::string core = chunk.substr(begin, end - begin);
        std::size_t start = 0;
        for (std::size_t i = 1; i + 1 <= core.size(); ++i) {
            if (core[i] == '\'' && i + 1 < core.size()) {
                out.push_back(core.substr(start, i - start));
                start = i;
                ++i;  // the apostrophe begins the next piece
            }
        }
        out.push_back(core.substr(start));
    }

    for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) {
        out.push_back(std::move(*it));
    }
}

}  // namespace

std::string lowercase(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

bool is_punctuation_only(const std::string& s) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    std::string mark;
    while (pos < s.size()) {
        if (!starts_with_mark(s, pos, &mark)) return false;
        pos += mark.size();
    }
    return true;
}

bool Sentence::operator==(const Sentence& other) const {
    if (tokens.size() != other.tokens.size()) return false;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].surface != other.tokens[i].surface) return false;
    }
    return true;
}

Sentence tokenize(const std::string& text) {
    std::vector<std::string> surfaces;
    std::string chunk;
    for (char c : text) {
        if (is_space_byte(c)) {
            if (!chunk.empty()) {
                emit_chunk(chunk, surfaces);
                chunk.clear();
            }
        } else {
            chunk.push_back(c);
        }
    }
    if (!chunk.empty()) emit_chunk(chunk, surfaces);

    if (surfaces.empty()) throw EmptyInput();

    Sentence s;
    s.source_text = text;
    s.tokens.reserve(surfaces.size());
    for (std::size_t i = 0; i < surfaces.size(); ++i) {
        s.tokens.push_back(make_token(std::move(surfaces[i]), i));
    }
    return s;
}

std::string detokenize(const Sentence& s) {
    std::string out;
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
        if (i > 0 && s.tokens[i].is_word) out.push_back(' ');
        out += s.tokens[i].surface;
    }
    return out;
}

std::vector<Token> slice(const Sentence& s, const Span& sp) {
    if (sp.start > sp.end || sp.end > s.size()) {
        throw SpanOutOfBounds(sp.start, sp.end, s.size());
    }
    return {s.tokens.begin() + static_cast<std::ptrdiff_t>(sp.start),
            s.tokens.begin() + static_cast<std::ptrdiff_t>(sp.end)};
}

Sentence sentence_from_tokens(const std::vector<std::string>& surfaces) {
    Sentence s;
    s.tokens.reserve(surfaces.size());
    for (std::size_t i = 0; i < surfaces.size(); ++i) {
        s.tokens.push_back(make_token(surfaces[i], i));
    }
    std::string joined;
    for (std::size_t i = 0; i < surfaces.size(); ++i) {
        if (i > 0) joined.push_back(' ');
        joined += surfaces[i];
    }
    s.source_text = joined;
    return s;
}

}  // namespace ptk
