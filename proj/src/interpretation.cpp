#include "iching/interpretation.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <sstream>

#include "iching/error.hpp"
#include "iching/playback.hpp"
#include "iching/rng.hpp"

namespace iching {

namespace {

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

HexagramText text_for(const Corpus& corpus, const Hexagram& h) {
  const auto& e = corpus.entry(h.king_wen());
  return {e.king_wen, e.name_pinyin, e.name_translated, e.gua_ci};
}

nlohmann::json to_json(const HexagramText& h) {
  return {{"gua_ci", h.gua_ci},
          {"king_wen", h.king_wen},
          {"name_pinyin", h.name_pinyin},
          {"name_translated", h.name_translated}};
}

std::string hexagram_label(const HexagramText& h) {
  return std::to_string(h.king_wen) + " " + h.name_pinyin + " (" + h.name_translated + ")";
}

}  // namespace

Inquiry make_inquiry(std::string question, std::optional<std::string> name) {
  if (blank(question)) throw Error(ErrorCode::EmptyQuestion, "the question must not be empty");
  if (name && blank(*name)) name.reset();
  return {std::move(question), std::move(name)};
}

std::string casting_digest(const CastingRecord& record) { return sha256_hex(canonical_json(record)); }

PromptDocument assemble_prompt(const Inquiry& inquiry, const CastingRecord& record,
                               const Corpus& corpus, const AssembleOptions& options) {
  auto ben = record.ben_gua();
  auto zhi = record.zhi_gua();
  if (!ben || !zhi) {
    throw Error(ErrorCode::IncompleteCasting,
                "interpretation needs six lines, have " + std::to_string(record.lines().size()));
  }
  const DivinationTexts texts = lookup_texts(corpus, record);

  PromptDocument doc;
  doc.question = inquiry.question;
  if (options.include_name) doc.name = inquiry.name;
  doc.ben_gua = text_for(corpus, *ben);
  for (const auto& [index, text] : texts.yao_ci_changing) doc.dong_yao.push_back({index, text});
  doc.zhi_gua = text_for(corpus, *zhi);
  doc.casting_digest = casting_digest(record);
  return doc;
}

std::string render_prompt_text(const PromptDocument& doc) {
  std::ostringstream out;
  out << "You are interpreting an I-Ching consultation cast with the three-coin method.\n"
      << "Write a reading addressed to the person that relates the judgment of the original\n"
      << "hexagram, the texts of any changing lines, and the judgment of the transformed\n"
      << "hexagram to their question. Then choose musical keywords for an ambient piece.\n"
      << "Reply with JSON only: {\"body\": string, \"keywords\": {\"mood\": [..],\n"
      << "\"energy\": [..], \"dynamics\": [..], \"spatial\": [..]}}. Each list must be non-empty.\n"
      << "Prefer energy from {still, flowing, surging} and dynamics from {soft, swelling, bold}.\n"
      << "Template: " << doc.template_version << "\n\n";
  if (doc.name) out << "Name: " << *doc.name << "\n";
  out << "Question: " << doc.question << "\n\n";
  out << "Original hexagram: " << hexagram_label(doc.ben_gua) << "\n";
  out << "Judgment: " << doc.ben_gua.gua_ci << "\n";
  if (doc.dong_yao.empty()) {
    out << "Changing lines: none\n";
  } else {
    for (const auto& line : doc.dong_yao) {
      out << "Changing line " << line.line_index << ": " << line.yao_ci << "\n";
    }
  }
  out << "Transformed hexagram: " << hexagram_label(doc.zhi_gua) << "\n";
  out << "Judgment: " << doc.zhi_gua.gua_ci << "\n";
  return out.str();
}

nlohmann::json to_json(const PromptDocument& doc) {
  nlohmann::json lines = nlohmann::json::array();
  for (const auto& l : doc.dong_yao) lines.push_back({{"line_index", l.line_index}, {"yao_ci", l.yao_ci}});
  return {{"ben_gua", to_json(doc.ben_gua)},
          {"casting_digest", doc.casting_digest},
          {"dong_yao", std::move(lines)},
          {"name", doc.name ? nlohmann::json(*doc.name) : nlohmann::json(nullptr)},
          {"question", doc.question},
          {"template_version", doc.template_version},
          {"zhi_gua", to_json(doc.zhi_gua)}};
}

nlohmann::json to_json(const Reading& reading) {
  return {{"body", reading.body},
          {"keywords", to_json(reading.keywords)},
          {"provider", reading.provider},
          {"template_version", reading.template_version}};
}

Reading parse_reading(std::string_view raw, std::string_view provider_id,
                      std::string_view template_version) {
  auto reject = [&](const std::string& why) -> Reading {
    throw Error(ErrorCode::MalformedProviderOutput, "provider output rejected: " + why,
                std::string(raw));
  };
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(raw);
  } catch (const nlohmann::json::parse_error&) {
    return reject("not JSON");
  }
  if (!j.is_object() || !j.contains("body") || !j.at("body").is_string()) {
    return reject("missing string `body`");
  }
  if (!j.contains("keywords") || !j.at("keywords").is_object()) return reject("missing `keywords`");

  Reading reading;
  reading.body = j.at("body").get<std::string>();
  if (blank(reading.body)) return reject("empty body");
  const auto& kw = j.at("keywords");
  for (auto name : kKeywordCategories) {
    const std::string key(name);
    if (!kw.contains(key) || !kw.at(key).is_array()) return reject("missing category `" + key + "`");
    for (const auto& word : kw.at(key)) {
      if (!word.is_string() || blank(word.get<std::string>())) {
        return reject("category `" + key + "` holds a non-text or empty keyword");
      }
      reading.keywords.category(name).push_back(word.get<std::string>());
    }
    if (reading.keywords.category(name).empty()) return reject("category `" + key + "` is empty");
  }
  reading.provider = std::string(provider_id);
  reading.template_version = std::string(template_version);
  return reading;
}

Reading interpret(const PromptDocument& doc, InterpretationProvider& provider) {
  const std::string raw = provider.complete(doc);
  return parse_reading(raw, provider.id(), doc.template_version);
}

namespace {

// Keyword lexicon, indexed by trigram (Qian, Dui, Li, Zhen, Xun, Kan, Gen, Kun).
constexpr std::array<std::array<const char*, 2>, 8> kMoodByTrigram = {{
    {"resolute", "luminous"},
    {"joyful", "serene"},
    {"bright", "hopeful"},
    {"restless", "determined"},
    {"tender", "reflective"},
    {"uncertain", "melancholy"},
    {"contemplative", "patient"},
    {"calm", "peaceful"},
}};

constexpr std::array<std::array<const char*, 2>, 8> kSpaceByTrigram = {{
    {"vast", "boundless"},
    {"spacious", "open"},
    {"airy", "wide"},
    {"distant", "echoing"},
    {"drifting", "airy"},
    {"enclosed", "echoing"},
    {"close", "inward"},
    {"open", "expansive"},
}};

constexpr std::array<const char*, 4> kEnergyColour = {"gathering", "circling", "unfolding", "rising"};
constexpr std::array<const char*, 4> kDynamicsColour = {"breathing", "layered", "sparse", "resonant"};

int yang_count(LinePattern p) { return std::popcount(p); }

}  // namespace

Reading mock_provider(const PromptDocument& doc) {
  const Hexagram ben = Hexagram::from_king_wen(doc.ben_gua.king_wen);
  const Hexagram zhi = Hexagram::from_king_wen(doc.zhi_gua.king_wen);
  const auto changing = static_cast<std::uint64_t>(doc.dong_yao.size());
  const std::uint64_t key =
      mix64((static_cast<std::uint64_t>(ben.king_wen()) << 16) | (changing << 8) |
            static_cast<std::uint64_t>(zhi.king_wen()));

  KeywordMap kw;
  const auto& moods = kMoodByTrigram[static_cast<int>(ben.upper()) - 1];
  const auto& undertone = kMoodByTrigram[static_cast<int>(ben.lower()) - 1];
  kw.mood.push_back(moods[key & 1]);
  if (undertone[(key >> 1) & 1] != kw.mood.front()) kw.mood.push_back(undertone[(key >> 1) & 1]);

  const char* energy = "surging";
  if (changing == 0) {
    energy = "still";
  } else if (changing == 1) {
    energy = (key >> 2) & 1 ? "still" : "flowing";
  } else if (changing <= 3) {
    energy = "flowing";
  }
  kw.energy.push_back(energy);
  kw.energy.push_back(kEnergyColour[(key >> 3) & 3]);

  const int rise = yang_count(zhi.pattern()) - yang_count(ben.pattern());
  kw.dynamics.push_back(rise > 0 ? "swelling" : yang_count(zhi.pattern()) >= 4 ? "bold" : "soft");
  kw.dynamics.push_back(kDynamicsColour[(key >> 5) & 3]);

  const auto& spaces = kSpaceByTrigram[static_cast<int>(zhi.upper()) - 1];
  kw.spatial.push_back(spaces[(key >> 7) & 1]);

  std::ostringstream body;
  if (doc.name) body << doc.name.value() << ", y";
  else body << "Y";
  body << "ou asked: \"" << doc.question << "\"\n\n";
  body << "The oracle answers with hexagram " << hexagram_label(doc.ben_gua) << ". "
       << doc.ben_gua.gua_ci << "\n\n";
  if (doc.dong_yao.empty()) {
    body << "No line is changing, so the judgment stands on its own: the situation rests in its "
            "present form, and its counsel is to be read whole.\n";
  } else {
    body << "Changing lines speak to the movement within it:\n";
    for (const auto& line : doc.dong_yao) {
      body << "  Line " << line.line_index << ": " << line.yao_ci << "\n";
    }
    body << "\nThe situation turns toward hexagram " << hexagram_label(doc.zhi_gua) << ". "
         << doc.zhi_gua.gua_ci << "\n";
  }
  body << "\nHold your question with a " << kw.mood.front() << " attention; the moment is "
       << kw.energy.front() << ".";

  return {body.str(), std::move(kw), "mock", doc.template_version};
}

std::string MockProvider::complete(const PromptDocument& doc) {
  const Reading r = mock_provider(doc);
  return nlohmann::json{{"body", r.body}, {"keywords", to_json(r.keywords)}}.dump();
}

namespace {

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ", ";
    out += w;
  }
  return out;
}

}  // namespace

MusicPlan build_music_plan(const Reading& reading, const CastingRecord& record) {
  MusicPlan plan;
  const auto& kw = reading.keywords;
  plan.keywords = kw;

  plan.prompts.push_back(
      {"Meditative ambient piece with koto, shakuhachi and flute on a pentatonic scale; " +
           kw.mood.front() + " mood, " + kw.energy.front() + " energy, " + kw.dynamics.front() +
           " dynamics, " + kw.spatial.front() + " space",
       1.0});
  plan.prompts.push_back({"Mood: " + join(kw.mood), 1.0});
  plan.prompts.push_back({"Energy: " + join(kw.energy), 0.8});
  plan.prompts.push_back({"Dynamics: " + join(kw.dynamics), 0.6});
  plan.prompts.push_back({"Spatial: " + join(kw.spatial), 0.6});

  plan.config.bpm = 66;
  for (const auto& w : kw.energy) {
    if (w == "still") { plan.config.bpm = 50; break; }
    if (w == "flowing") { plan.config.bpm = 66; break; }
    if (w == "surging") { plan.config.bpm = 84; break; }
  }
  plan.config.density = 0.6;
  for (const auto& w : kw.dynamics) {
    if (w == "soft") { plan.config.density = 0.3; break; }
    if (w == "swelling") { plan.config.density = 0.6; break; }
    if (w == "bold") { plan.config.density = 0.9; break; }
  }
  plan.config.duration_seconds = 45.0;

  plan.provenance = {reading.provider, reading.template_version, casting_digest(record)};
  validate_plan(plan);
  return plan;
}

}  // namespace iching
