#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace iching {

inline constexpr std::array<std::string_view, 4> kKeywordCategories = {"mood", "energy",
                                                                       "dynamics", "spatial"};

struct KeywordMap {
  std::vector<std::string> mood;
  std::vector<std::string> energy;
  std::vector<std::string> dynamics;
  std::vector<std::string> spatial;

  // Throws InvalidArgument for a name outside kKeywordCategories.
  const std::vector<std::string>& category(std::string_view name) const;
  std::vector<std::string>& category(std::string_view name);

  bool complete() const { return !mood.empty() && !energy.empty() && !dynamics.empty() && !spatial.empty(); }
  friend bool operator==(const KeywordMap&, const KeywordMap&) = default;
};

nlohmann::json to_json(const KeywordMap& keywords);
KeywordMap keyword_map_from_json(const nlohmann::json& j);

struct WeightedPrompt {
  std::string text;
  double weight = 1.0;
  friend bool operator==(const WeightedPrompt&, const WeightedPrompt&) = default;
};

struct PlanConfig {
  int bpm = 66;
  double density = 0.6;
  double duration_seconds = 45.0;
  friend bool operator==(const PlanConfig&, const PlanConfig&) = default;
};

struct PlanProvenance {
  std::string provider;
  std::string template_version;
  std::string casting_digest;
  friend bool operator==(const PlanProvenance&, const PlanProvenance&) = default;
};

// The document that conditions generative playback. Users can inspect it
// verbatim through the plan endpoint and the CLI.
struct MusicPlan {
  std::vector<WeightedPrompt> prompts;
  PlanConfig config;
  KeywordMap keywords;
  PlanProvenance provenance;
  friend bool operator==(const MusicPlan&, const MusicPlan&) = default;
};

inline constexpr double kMinAmbientSeconds = 30.0;
inline constexpr double kMaxAmbientSeconds = 60.0;

// Throws InvalidPlan describing the first violated invariant.
void validate_plan(const MusicPlan& plan);

// Canonical JSON:
// {"config":{"bpm","density","duration_seconds"},
//  "keywords":{"dynamics":[],"energy":[],"mood":[],"spatial":[]},
//  "prompts":[{"text","weight"}],
//  "provenance":{"casting_digest","provider","template_version"}}
// Keys are sorted at every level.
nlohmann::json to_json(const MusicPlan& plan);
MusicPlan music_plan_from_json(const nlohmann::json& j);
std::string canonical_json(const MusicPlan& plan);

}  // namespace iching
