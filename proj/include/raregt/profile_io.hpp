#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "raregt/measures.hpp"

namespace raregt {

/// Reads `{"atoms": [{"a", "b", "f"}], "beta", "granularity"}`. Rationals may
/// be "num/den" strings, decimal strings or JSON numbers. Throws ConfigError
/// for missing or mistyped fields; the result is not yet validated.
ScaledProfile profile_from_json(const nlohmann::json& doc);
nlohmann::json profile_to_json(const ScaledProfile& profile);

ScaledProfile load_profile(const std::filesystem::path& path);
void save_profile(const std::filesystem::path& path, const ScaledProfile& profile);

/// Writes counterexample.json, uniform.json and skew.json into `dir`
/// (created if needed) and returns the paths written.
std::vector<std::filesystem::path> emit_profile_library(const std::filesystem::path& dir);

/// Parses a JSON value holding a rational (string or number).
Rational rational_from_json(const nlohmann::json& value);

}  // namespace raregt
