#pragma once

#include <stdexcept>
#include <string>

namespace ptk {

// Base for all toolkit errors; `code()` is the stable machine-readable name
// that appears in error records emitted by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

struct EmptyInput : Error {
    explicit EmptyInput(const std::string& msg = "input is empty or whitespace-only")
        : Error("EmptyInput", msg) {}
};

struct SpanOutOfBounds : Error {
    SpanOutOfBounds(std::size_t start, std::size_t end, std::size_t len)
        : Error("SpanOutOfBounds",
                "span [" + std::to_string(start) + ", " + std::to_string(end) +
                    ") exceeds sentence length " + std::to_string(len)) {}
};

struct ParseError : Error {
    ParseError(std::size_t line, const std::string& reason)
        : Error("ParseError", "line " + std::to_string(line) + ": " + reason),
          line_number(line) {}
    std::size_t line_number;
};

struct DuplicateSynsetId : Error {
    explicit DuplicateSynsetId(const std::string& id)
        : Error("DuplicateSynsetId", "duplicate synset id: " + id) {}
};

struct IncompatibleSubstitution : Error {
    IncompatibleSubstitution(const std::string& from, const std::string& to)
        : Error("IncompatibleSubstitution",
                "'" + to + "' is not a synonym of '" + from + "' and no override was set") {}
};

struct TemplateMismatch : Error {
    explicit TemplateMismatch(const std::string& msg)
        : Error("TemplateMismatch", msg) {}
};

struct UnknownVerbForm : Error {
    explicit UnknownVerbForm(const std::string& msg)
        : Error("UnknownVerbForm", msg) {}
};

struct FingerprintMismatch : Error {
    FingerprintMismatch()
        : Error("FingerprintMismatch", "edit script fingerprint does not match the sentence") {}
};

struct EmptyScoreSet : Error {
    EmptyScoreSet() : Error("EmptyScoreSet", "cannot aggregate an empty score set") {}
};

struct NoCandidates : Error {
    NoCandidates() : Error("NoCandidates", "no observed references and no samples requested") {}
};

struct SupportMismatch : Error {
    SupportMismatch() : Error("SupportMismatch", "policies are defined over different supports") {}
};

struct EmptyActionSupport : Error {
    EmptyActionSupport()
        : Error("EmptyActionSupport", "no candidate edit applies to the source sentence") {}
};

struct InsufficientCapacity : Error {
    InsufficientCapacity(std::size_t needed, std::size_t available)
        : Error("InsufficientCapacity",
                "need " + std::to_string(needed) + " bits but carrier holds " +
                    std::to_string(available)) {}
};

struct EvenVoteCount : Error {
    explicit EvenVoteCount(std::size_t k)
        : Error("EvenVoteCount", "vote count must be odd, got " + std::to_string(k)) {}
};

struct InvalidEdit : Error {
    explicit InvalidEdit(const std::string& msg) : Error("InvalidEdit", msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("ConfigError", msg) {}
};

}  // namespace ptk
