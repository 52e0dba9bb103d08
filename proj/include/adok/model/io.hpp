#pragma once

#include <adok/model/model.hpp>

#include <nlohmann/json_fwd.hpp>

#include <string>

namespace adok {

using Json = nlohmann::ordered_json;

Json model_to_json(const DiagonalModel& model);
DiagonalModel model_from_json(const Json& j);

// Reads, validates, and reports malformed content with field diagnostics
// via std::invalid_argument.
DiagonalModel load_model(const std::string& path);
void save_model(const DiagonalModel& model, const std::string& path);

std::string canonical_model_text(const DiagonalModel& model);
// FNV-1a 64 content digest of the canonical text.
std::string digest_hex(const std::string& text);
std::string model_digest(const DiagonalModel& model);

}  // namespace adok
