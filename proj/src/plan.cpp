#include "iching/plan.hpp"

#include <cmath>
#include <utility>

#include "iching/error.hpp"

namespace iching {

const std::vector<std::string>& KeywordMap::category(std::string_view name) const {
  if (name == "mood") return mood;
  if (name == "energy") return energy;
  if (name == "dynamics") return dynamics;
  if (name == "spatial") return spatial;
  throw Error(ErrorCode::InvalidArgument, "unknown keyword category `" + std::string(name) + "`");
}

std::vector<std::string>& KeywordMap::category(std::string_view name) {
  return const_cast<std::vector<std::string>&>(std::as_const(*this).category(name));
}

nlohmann::json to_json(const KeywordMap& keywords) {
  return {{"dynamics", keywords.dynamics},
          {"energy", keywords.energy},
          {"mood", keywords.mood},
          {"spatial", keywords.spatial}};
}

KeywordMap keyword_map_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::SchemaError, "keywords must be an object");
  KeywordMap map;
  for (auto name : kKeywordCategories) {
    const std::string key(name);
    if (!j.contains(key)) throw Error(ErrorCode::SchemaError, "keywords missing `" + key + "`");
    const auto& list = j.at(key);
    if (!list.is_array()) throw Error(ErrorCode::SchemaError, "keywords `" + key + "` must be a list");
    for (const auto& word : list) {
      if (!word.is_string()) {
        throw Error(ErrorCode::SchemaError, "keywords `" + key + "` must hold strings");
      }
      map.category(name).push_back(word.get<std::string>());
    }
  }
  return map;
}

void validate_plan(const MusicPlan& plan) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidPlan, what); };
  if (plan.prompts.empty()) fail("plan needs at least one prompt");
  bool any_positive = false;
  for (const auto& p : plan.prompts) {
    if (!std::isfinite(p.weight) || p.weight < 0.0) fail("prompt weights must be non-negative");
    if (p.weight > 0.0) any_positive = true;
  }
  if (!any_positive) fail("at least one prompt weight must be positive");
  if (plan.config.bpm <= 0) fail("bpm must be positive");
  if (!(plan.config.density >= 0.0 && plan.config.density <= 1.0)) fail("density must lie in [0, 1]");
  if (!(plan.config.duration_seconds >= kMinAmbientSeconds &&
        plan.config.duration_seconds <= kMaxAmbientSeconds)) {
    fail("duration_seconds must lie in [30, 60]");
  }
  for (auto name : kKeywordCategories) {
    const auto& words = plan.keywords.category(name);
    if (words.empty()) fail("keyword category `" + std::string(name) + "` is empty");
    for (const auto& w : words) {
      if (w.empty()) fail("keyword category `" + std::string(name) + "` has an empty keyword");
    }
  }
}

nlohmann::json to_json(const MusicPlan& plan) {
  nlohmann::json prompts = nlohmann::json::array();
  for (const auto& p : plan.prompts) prompts.push_back({{"text", p.text}, {"weight", p.weight}});
  return {{"config",
           {{"bpm", plan.config.bpm},
            {"density", plan.config.density},
            {"duration_seconds", plan.config.duration_seconds}}},
          {"keywords", to_json(plan.keywords)},
          {"prompts", std::move(prompts)},
          {"provenance",
           {{"casting_digest", plan.provenance.casting_digest},
            {"provider", plan.provenance.provider},
            {"template_version", plan.provenance.template_version}}}};
}

MusicPlan music_plan_from_json(const nlohmann::json& j) {
  MusicPlan plan;
  try {
    for (const auto& p : j.at("prompts")) {
      plan.prompts.push_back({p.at("text").get<std::string>(), p.at("weight").get<double>()});
    }
    const auto& config = j.at("config");
    plan.config.bpm = config.at("bpm").get<int>();
    plan.config.density = config.at("density").get<double>();
    plan.config.duration_seconds = config.at("duration_seconds").get<double>();
    plan.keywords = keyword_map_from_json(j.at("keywords"));
    const auto& prov = j.at("provenance");
    plan.provenance.provider = prov.at("provider").get<std::string>();
    plan.provenance.template_version = prov.at("template_version").get<std::string>();
    plan.provenance.casting_digest = prov.at("casting_digest").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidPlan, std::string("malformed music plan: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidPlan, e.what());
  }
  validate_plan(plan);
  return plan;
}

std::string canonical_json(const MusicPlan& plan) { return to_json(plan).dump(); }

}  // namespace iching
