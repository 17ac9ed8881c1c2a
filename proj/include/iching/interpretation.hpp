#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "iching/casting.hpp"
#include "iching/corpus.hpp"
#include "iching/plan.hpp"

namespace iching {

inline constexpr std::string_view kTemplateVersion = "reading-v1";

struct Inquiry {
  std::string question;
  std::optional<std::string> name;

  friend bool operator==(const Inquiry&, const Inquiry&) = default;
};

// Keeps the question verbatim. Throws EmptyQuestion if it is blank; a blank
// name is treated as absent.
Inquiry make_inquiry(std::string question, std::optional<std::string> name = std::nullopt);

struct HexagramText {
  int king_wen = 0;
  std::string name_pinyin;
  std::string name_translated;
  std::string gua_ci;
  friend bool operator==(const HexagramText&, const HexagramText&) = default;
};

struct ChangingLineText {
  int line_index = 0;
  std::string yao_ci;
  friend bool operator==(const ChangingLineText&, const ChangingLineText&) = default;
};

struct PromptDocument {
  std::string question;
  std::optional<std::string> name;
  HexagramText ben_gua;
  std::vector<ChangingLineText> dong_yao;  // ascending line order
  HexagramText zhi_gua;
  std::string template_version{kTemplateVersion};
  std::string casting_digest;

  friend bool operator==(const PromptDocument&, const PromptDocument&) = default;
};

struct AssembleOptions {
  // Whether the optional name travels to the provider.
  bool include_name = true;
};

// Throws IncompleteCasting before the sixth line.
PromptDocument assemble_prompt(const Inquiry& inquiry, const CastingRecord& record,
                               const Corpus& corpus, const AssembleOptions& options = {});

// The instruction text plus the document, as sent to a language model.
std::string render_prompt_text(const PromptDocument& doc);

nlohmann::json to_json(const PromptDocument& doc);

struct Reading {
  std::string body;
  KeywordMap keywords;
  std::string provider;
  std::string template_version;

  friend bool operator==(const Reading&, const Reading&) = default;
};

nlohmann::json to_json(const Reading& reading);

// Validates provider output of the form
//   {"body": "...", "keywords": {"mood":[...], "energy":[...],
//                                "dynamics":[...], "spatial":[...]}}
// Throws MalformedProviderOutput with the raw text in Error::detail().
Reading parse_reading(std::string_view raw, std::string_view provider_id,
                      std::string_view template_version);

class InterpretationProvider {
 public:
  virtual ~InterpretationProvider() = default;

  virtual std::string id() const = 0;

  // Raw model output. Throws ProviderUnavailable on transport failure.
  virtual std::string complete(const PromptDocument& doc) = 0;
};

// Never yields a partial reading: output missing a category is rejected.
Reading interpret(const PromptDocument& doc, InterpretationProvider& provider);

// Offline deterministic reading. Keywords come from a bundled lexicon keyed
// by (Ben Gua, number of changing lines, Zhi Gua).
Reading mock_provider(const PromptDocument& doc);

class MockProvider final : public InterpretationProvider {
 public:
  std::string id() const override { return "mock"; }
  std::string complete(const PromptDocument& doc) override;
};

// config.bpm from the first energy keyword (still 50, flowing 66, surging 84),
// density from the first dynamics keyword (soft 0.3, swelling 0.6, bold 0.9);
// unmapped keywords fall back to 66 and 0.6. One prompt per keyword category
// plus a summary prompt. duration_seconds is 45.
MusicPlan build_music_plan(const Reading& reading, const CastingRecord& record);

std::string casting_digest(const CastingRecord& record);

}  // namespace iching
