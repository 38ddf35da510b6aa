#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptk/detector.hpp"
#include "ptk/metric.hpp"
#include "ptk/taxonomy.hpp"
#include "ptk/text.hpp"

namespace ptk::io {

using nlohmann::json;

// All emitted floats are rounded to 6 decimal places so reruns are
// byte-identical regardless of accumulation order.
double round6(double v);

json span_to_json(const Span& sp);
Span span_from_json(const json& j);

json edit_to_json(const AtomicEdit& e);
AtomicEdit edit_from_json(const json& j);

json script_to_json(const EditScript& s);
EditScript script_from_json(const json& j);

json detection_to_json(const DetectionReport& r);
json score_to_json(const ScoreReport& r);

// Rejects records carrying keys outside `allowed`; `required` must all be
// present. Throws ParseError with the offending key in the message.
void check_keys(const json& record, const std::vector<std::string>& allowed,
                const std::vector<std::string>& required);

std::vector<json> read_jsonl(const std::string& path);
void write_jsonl(const std::string& path, const std::vector<json>& records);
std::string dump_line(const json& record);

std::optional<GoldSpans> gold_from_json(const json& labels);

}  // namespace ptk::io
