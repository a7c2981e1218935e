#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "json.hpp"

// Internal helpers for digging JSON objects out of free-form model text.
namespace hanabench::detail {

// Index of the '}' closing the object that starts at `start`, string-aware.
std::size_t match_brace(const std::string& text, std::size_t start);

// Repairs the two artifacts models actually produce: stray "" tokens floating
// between members, and trailing commas before a closing brace/bracket.
std::string lenient_json_cleanup(const std::string& s);

// The syntactically valid object whose closing brace sits furthest right.
// Returns nullopt when the text contains none.
std::optional<nlohmann::json> extract_last_json_object(const std::string& text);

}  // namespace hanabench::detail
