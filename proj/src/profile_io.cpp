#include "raregt/profile_io.hpp"

#include <fstream>
#include <stdexcept>

#include "raregt/error.hpp"

namespace raregt {
namespace {

nlohmann::json rational_to_json(const Rational& r) {
  if (r.is_integer()) return r.num();
  return r.str();
}

}  // namespace

Rational rational_from_json(const nlohmann::json& value) {
  try {
    if (value.is_string()) return Rational::parse(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
    if (value.is_number_float()) return Rational::from_double(value.get<double>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad rational: ") + e.what());
  } catch (const std::overflow_error& e) {
    throw ConfigError(std::string("bad rational: ") + e.what());
  }
  throw ConfigError("expected a rational, got " + value.dump());
}

ScaledProfile profile_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("profile must be a JSON object");
  if (!doc.contains("atoms") || !doc["atoms"].is_array()) throw ConfigError("profile needs an 'atoms' array");
  ScaledProfile profile;
  for (const auto& item : doc["atoms"]) {
    if (!item.is_object() || !item.contains("a") || !item.contains("b") || !item.contains("f")) {
      throw ConfigError("each atom needs fields a, b and f");
    }
    profile.atoms.push_back({rational_from_json(item["a"]), rational_from_json(item["b"]), rational_from_json(item["f"])});
  }
  profile.beta = doc.contains("beta") ? rational_from_json(doc["beta"]) : Rational(1);
  if (doc.contains("granularity")) {
    if (!doc["granularity"].is_number_integer()) throw ConfigError("granularity must be an integer");
    profile.granularity = doc["granularity"].get<std::int64_t>();
  }
  return profile;
}

nlohmann::json profile_to_json(const ScaledProfile& profile) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& atom : profile.atoms) {
    atoms.push_back({{"a", rational_to_json(atom.a)}, {"b", rational_to_json(atom.b)}, {"f", rational_to_json(atom.f)}});
  }
  return {{"atoms", atoms}, {"beta", rational_to_json(profile.beta)}, {"granularity", profile.granularity}};
}

ScaledProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open profile " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return profile_from_json(doc);
}

void save_profile(const std::filesystem::path& path, const ScaledProfile& profile) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << profile_to_json(profile).dump(2) << '\n';
}

std::vector<std::filesystem::path> emit_profile_library(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::pair<const char*, ScaledProfile> library[] = {
      {"counterexample.json", counterexample_profile()},
      {"uniform.json", uniform_profile()},
      {"skew.json", skew_profile()},
  };
  std::vector<std::filesystem::path> written;
  for (const auto& [name, profile] : library) {
    written.push_back(dir / name);
    save_profile(written.back(), profile);
  }
  return written;
}

}  // namespace raregt
