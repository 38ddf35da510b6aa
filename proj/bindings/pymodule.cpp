// Python bindings for the main operations. Structured payloads cross the
// boundary as JSON strings so the Python side stays schema-compatible with
// the CLI's JSONL records.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptk/detector.hpp"
#include "ptk/errors.hpp"
#include "ptk/io.hpp"
#include "ptk/lexicon.hpp"
#include "ptk/metric.hpp"
#include "ptk/policy.hpp"
#include "ptk/stego.hpp"
#include "ptk/taxonomy.hpp"
#include "ptk/text.hpp"

namespace py = pybind11;

namespace {

std::vector<std::string> tokenize_surfaces(const std::string& text) {
    ptk::Sentence s = ptk::tokenize(text);
    std::vector<std::string> out;
    out.reserve(s.size());
    for (const auto& t : s.tokens) out.push_back(t.surface);
    return out;
}

std::string apply_script_json(const std::string& text, const std::string& script_json,
                              const ptk::Lexicon& lex) {
    ptk::Sentence s = ptk::tokenize(text);
    ptk::EditScript script = ptk::io::script_from_json(nlohmann::json::parse(script_json));
    return ptk::detokenize(ptk::apply_script(s, script, lex));
}

std::string make_script_json(const std::string& text, const std::string& edits_json) {
    ptk::Sentence s = ptk::tokenize(text);
    std::vector<ptk::AtomicEdit> edits;
    for (const auto& e : nlohmann::json::parse(edits_json)) {
        edits.push_back(ptk::io::edit_from_json(e));
    }
    return ptk::io::script_to_json(ptk::make_script(s, std::move(edits))).dump();
}

std::string detect_json(const std::string& source, const std::string& target,
                        const ptk::Lexicon& lex) {
    return ptk::io::detection_to_json(
               ptk::detect(ptk::tokenize(source), ptk::tokenize(target), lex))
        .dump();
}

double score_pair(const std::string& source, const std::string& candidate,
                  const std::vector<std::string>& references, const ptk::Lexicon& lex, double tau,
                  std::size_t k_samples, std::uint64_t seed) {
    ptk::MetricConfig cfg;
    cfg.tau = tau;
    cfg.k_samples = k_samples;
    cfg.rng_seed = seed;
    std::vector<ptk::Sentence> refs;
    refs.reserve(references.size());
    for (const auto& r : references) refs.push_back(ptk::tokenize(r));
    return ptk::score(ptk::tokenize(source), ptk::tokenize(candidate), refs, std::nullopt,
                      std::nullopt, cfg, lex)
        .aggregate;
}

py::tuple search_best(const std::string& text, const std::vector<std::string>& type_names,
                      const std::vector<std::string>& references, const ptk::Lexicon& lex,
                      std::uint64_t seed) {
    std::set<ptk::ParaphraseType> types;
    for (const auto& name : type_names) {
        auto t = ptk::parse_paraphrase_type(name);
        if (!t) throw ptk::ConfigError("unknown paraphrase type: " + name);
        types.insert(*t);
    }
    std::vector<ptk::Sentence> refs;
    for (const auto& r : references) refs.push_back(ptk::tokenize(r));
    ptk::PolicyConfig pcfg;
    pcfg.rng_seed = seed;
    ptk::MetricConfig mcfg;
    mcfg.rng_seed = seed;
    ptk::SearchResult result = ptk::search(ptk::tokenize(text), types, refs, pcfg, mcfg, lex);
    return py::make_tuple(ptk::detokenize(result.best.final), result.best.reward);
}

std::string stego_encode(const std::string& text, const std::string& bits, std::uint64_t seed,
                         const ptk::Lexicon& lex) {
    return ptk::detokenize(ptk::encode(ptk::tokenize(text), ptk::SecretMessage::from_string(bits),
                                       lex, ptk::BucketPartition::seeded(seed)));
}

std::string stego_decode(const std::string& text, std::size_t n_bits, std::uint64_t seed,
                         const ptk::Lexicon& lex) {
    return ptk::decode(ptk::tokenize(text), n_bits, lex, ptk::BucketPartition::seeded(seed))
        .to_string();
}

std::size_t stego_capacity(const std::string& text, std::uint64_t seed, const ptk::Lexicon& lex) {
    return ptk::capacity(ptk::tokenize(text), lex, ptk::BucketPartition::seeded(seed));
}

}  // namespace

PYBIND11_MODULE(_ptk, m) {
    m.doc() = "typed paraphrase-edit toolkit";

    py::register_exception<ptk::Error>(m, "ToolkitError");

    py::class_<ptk::Lexicon>(m, "Lexicon")
        .def_static("load", &ptk::Lexicon::load, py::arg("path"))
        .def_static("parse", &ptk::Lexicon::parse, py::arg("contents"))
        .def("synonyms_of", &ptk::Lexicon::synonyms_of, py::arg("lemma"))
        .def("are_antonyms", &ptk::Lexicon::are_antonyms, py::arg("a"), py::arg("b"))
        .def("is_negator", &ptk::Lexicon::is_negator, py::arg("lemma"));

    m.def("tokenize", &tokenize_surfaces, py::arg("text"));
    m.def("paraphrase_types", [] {
        std::vector<std::string> names;
        for (auto t : ptk::all_paraphrase_types()) names.push_back(ptk::to_string(t));
        return names;
    });
    m.def("make_script", &make_script_json, py::arg("text"), py::arg("edits_json"));
    m.def("apply_script", &apply_script_json, py::arg("text"), py::arg("script_json"),
          py::arg("lexicon"));
    m.def("detect", &detect_json, py::arg("source"), py::arg("target"), py::arg("lexicon"));
    m.def("score", &score_pair, py::arg("source"), py::arg("candidate"), py::arg("references"),
          py::arg("lexicon"), py::arg("tau") = 0.1, py::arg("k_samples") = 16,
          py::arg("seed") = 42);
    m.def("search", &search_best, py::arg("text"), py::arg("types"), py::arg("references"),
          py::arg("lexicon"), py::arg("seed") = 42);
    m.def("stego_encode", &stego_encode, py::arg("text"), py::arg("bits"), py::arg("seed"),
          py::arg("lexicon"));
    m.def("stego_decode", &stego_decode, py::arg("text"), py::arg("n_bits"), py::arg("seed"),
          py::arg("lexicon"));
    m.def("stego_capacity", &stego_capacity, py::arg("text"), py::arg("seed"), py::arg("lexicon"));
}
