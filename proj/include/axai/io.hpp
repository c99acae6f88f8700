#pragma once

#include "axai/classifier.hpp"
#include "axai/constructions.hpp"
#include "axai/mlp.hpp"
#include "axai/queries.hpp"

#include <json.hpp>

#include <filesystem>

namespace axai {

/// Insertion-ordered so emitted documents keep the documented key order.
using json = nlohmann::ordered_json;

/// Accepts "fbdd", "perceptron", "mlp", "constant_one", and "circuit"
/// (compiled to an MLP). Every structural problem is error(schema).
classifier classifier_from_json(const json& doc);
json to_json(const classifier& c);

json to_json(const fbdd& f);
json to_json(const perceptron& f);
json to_json(const mlp& f);

boolean_circuit circuit_from_json(const json& doc);
json to_json(const boolean_circuit& c);

ssp_instance ssp_from_json(const json& doc);
json to_json(const ssp_instance& inst);

/// {"query", "answer", "witness", "method", "in_context_input", "stats"}.
/// Counts that do not fit in 64 bits are written as decimal strings.
json to_json(const query_result& r);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& doc, bool pretty = true);
std::string dump(const json& doc, bool pretty);

inline classifier load_classifier(const std::filesystem::path& path) {
  return classifier_from_json(read_json_file(path));
}

}  // namespace axai
