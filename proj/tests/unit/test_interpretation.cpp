#include "doctest.h"

#include "iching/corpus.hpp"
#include "iching/error.hpp"
#include "iching/interpretation.hpp"

using namespace iching;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an iching::Error");
  return ErrorCode::InvalidState;
}

class FixedProvider final : public InterpretationProvider {
 public:
  explicit FixedProvider(std::string raw) : raw_(std::move(raw)) {}
  std::string id() const override { return "fixed"; }
  std::string complete(const PromptDocument&) override { return raw_; }

 private:
  std::string raw_;
};

}  // namespace

TEST_CASE("inquiries need a question") {
  CHECK(code_of([] { make_inquiry("   "); }) == ErrorCode::EmptyQuestion);
  CHECK_FALSE(make_inquiry("why?", std::string(" ")).name.has_value());
  CHECK(make_inquiry("why?", std::string("Mei")).name == "Mei");
}

TEST_CASE("prompt document carries the casting texts") {
  const auto record = cast_hexagram(42);
  const auto inquiry = make_inquiry("Should I move?", std::string("Mei"));
  const auto doc = assemble_prompt(inquiry, record, bundled_corpus());
  CHECK(doc.question == "Should I move?");
  CHECK(doc.name == "Mei");
  CHECK(doc.ben_gua.king_wen == record.ben_gua()->king_wen());
  CHECK(doc.zhi_gua.king_wen == record.zhi_gua()->king_wen());
  CHECK(doc.dong_yao.size() == record.dong_yao().size());
  CHECK(doc.template_version == kTemplateVersion);
  CHECK(doc.casting_digest == casting_digest(record));
  CHECK(doc.casting_digest.size() == 64);

  const auto text = render_prompt_text(doc);
  CHECK(text.find("Mei") != std::string::npos);
  CHECK(text.find(doc.ben_gua.gua_ci) != std::string::npos);

  const auto hidden = assemble_prompt(inquiry, record, bundled_corpus(), {.include_name = false});
  CHECK_FALSE(hidden.name.has_value());
  CHECK(render_prompt_text(hidden).find("Mei") == std::string::npos);

  CHECK(code_of([&] { assemble_prompt(inquiry, CastingRecord(1), bundled_corpus()); }) ==
        ErrorCode::IncompleteCasting);
}

TEST_CASE("provider output is validated") {
  const auto doc = assemble_prompt(make_inquiry("q"), cast_hexagram(1), bundled_corpus());
  const std::string good =
      R"({"body":"text","keywords":{"mood":["calm"],"energy":["still"],"dynamics":["soft"],"spatial":["vast"]}})";
  FixedProvider ok(good);
  const auto reading = interpret(doc, ok);
  CHECK(reading.body == "text");
  CHECK(reading.provider == "fixed");
  CHECK(reading.keywords.energy == std::vector<std::string>{"still"});

  for (const std::string bad :
       {std::string("not json"), std::string(R"({"keywords":{}})"),
        std::string(R"({"body":"x","keywords":{"mood":[],"energy":["a"],"dynamics":["b"],"spatial":["c"]}})"),
        std::string(R"({"body":"x","keywords":{"mood":["a"],"energy":["a"],"dynamics":["b"]}})"),
        std::string(R"({"body":"x","keywords":{"mood":[1],"energy":["a"],"dynamics":["b"],"spatial":["c"]}})")}) {
    FixedProvider p(bad);
    try {
      interpret(doc, p);
      FAIL("expected rejection");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MalformedProviderOutput);
      CHECK(e.detail() == bad);
    }
  }
}

TEST_CASE("mock provider is deterministic and complete") {
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    const auto doc = assemble_prompt(make_inquiry("q"), cast_hexagram(seed), bundled_corpus());
    const auto a = mock_provider(doc);
    CHECK(a == mock_provider(doc));
    CHECK(a.keywords.complete());
    MockProvider p;
    CHECK(interpret(doc, p) == a);
  }
}

TEST_CASE("music plan from a reading") {
  const auto record = cast_hexagram(7);
  const auto doc = assemble_prompt(make_inquiry("q"), record, bundled_corpus());
  const auto plan = build_music_plan(mock_provider(doc), record);
  CHECK(plan.prompts.size() == 5);
  CHECK(plan.config.duration_seconds >= 30.0);
  CHECK(plan.config.duration_seconds <= 60.0);
  CHECK(plan.provenance.casting_digest == casting_digest(record));
  CHECK(music_plan_from_json(to_json(plan)) == plan);
  CHECK(canonical_json(music_plan_from_json(nlohmann::json::parse(canonical_json(plan)))) ==
        canonical_json(plan));

  auto broken = plan;
  broken.config.duration_seconds = 10;
  CHECK(code_of([&] { validate_plan(broken); }) == ErrorCode::InvalidPlan);
  broken = plan;
  broken.keywords.spatial.clear();
  CHECK(code_of([&] { validate_plan(broken); }) == ErrorCode::InvalidPlan);
}
