#include "doctest.h"

#include "iching/error.hpp"
#include "iching/session.hpp"

using namespace iching;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an iching::Error");
  return ErrorCode::Busy;
}

Session cast_through(std::uint64_t seed, const GenParams& params) {
  Session s = ritual::submit_inquiry(ritual::create("s", seed, 0), make_inquiry("q"), 1);
  for (int k = 0; k < 6; ++k) s = ritual::perform_toss(s, params, 2 + k).session;
  return s;
}

Session interpreted(std::uint64_t seed, const GenParams& params) {
  const Session s = cast_through(seed, params);
  MockProvider mock;
  const auto doc = ritual::prompt_for(s, bundled_corpus(), {});
  return ritual::apply_interpretation(s, mock.complete(doc), mock.id(), doc.template_version, 10);
}

}  // namespace

TEST_CASE("the ritual walks through its states") {
  const GenParams params;
  Session s = ritual::create("abc", 42, 100);
  CHECK(to_string(s.state) == "intake");
  CHECK(code_of([&] { ritual::perform_toss(s, params, 1); }) == ErrorCode::InvalidState);
  CHECK(code_of([&] { ritual::playback(s, 0, 5, params); }) == ErrorCode::InvalidState);
  CHECK(code_of([&] { ritual::submit_inquiry(s, {"  ", {}}, 1); }) == ErrorCode::EmptyQuestion);

  s = ritual::submit_inquiry(s, make_inquiry("Where now?"), 101);
  CHECK(to_string(s.state) == "casting(0)");
  CHECK(ritual::playback(s, 0, 5, params).events.empty());
  CHECK(code_of([&] { ritual::submit_inquiry(s, make_inquiry("again"), 1); }) == ErrorCode::InvalidState);

  for (int k = 1; k <= 6; ++k) {
    const auto out = ritual::perform_toss(s, params, 101 + k);
    CHECK(out.session.layers.size() == static_cast<std::size_t>(k));
    CHECK(out.layer.line_index == k);
    CHECK(out.toss.coins == toss_for(42, 0, k - 1).coins);
    s = out.session;
    CHECK_FALSE(ritual::playback(s, 0, 8, params).events.empty());
  }
  CHECK(to_string(s.state) == "interpreting");
  CHECK(s.record == cast_hexagram(42));
  CHECK(code_of([&] { ritual::perform_toss(s, params, 1); }) == ErrorCode::InvalidState);
  CHECK(code_of([&] { ritual::plan_of(s); }) == ErrorCode::PlanNotReady);
  CHECK(code_of([&] { ritual::finish(s, 1); }) == ErrorCode::InvalidState);

  const Session before = s;
  CHECK(code_of([&] { ritual::apply_interpretation(s, "garbage", "mock", "reading-v1", 5); }) ==
        ErrorCode::MalformedProviderOutput);
  CHECK(s == before);

  s = interpreted(42, params);
  CHECK(to_string(s.state) == "playback");
  CHECK(ritual::plan_of(s).provenance.casting_digest == casting_digest(s.record));
  const auto chunk = ritual::playback(s, 0, 60, params);
  CHECK_FALSE(chunk.events.empty());
  CHECK(chunk.total_duration == ritual::plan_of(s).config.duration_seconds);

  s = ritual::finish(s, 20);
  CHECK(to_string(s.state) == "complete");
  CHECK(code_of([&] { ritual::finish(s, 21); }) == ErrorCode::InvalidState);
  CHECK(ritual::playback(s, 0, 60, params) == chunk);
}

TEST_CASE("reset returns to intake on a fresh epoch") {
  const GenParams params;
  const Session done = interpreted(9, params);
  const Session fresh = ritual::reset(done, 50);
  CHECK(to_string(fresh.state) == "intake");
  CHECK(fresh.epoch == 1);
  CHECK(fresh.layers.empty());
  CHECK_FALSE(fresh.inquiry.has_value());
  CHECK_FALSE(fresh.plan.has_value());
  CHECK(fresh.record.tosses().empty());
  CHECK(fresh.id == done.id);
  CHECK(fresh.created_at == done.created_at);

  Session again = ritual::submit_inquiry(fresh, make_inquiry("q"), 51);
  bool any_differs = false;
  for (int k = 0; k < 6; ++k) {
    const auto out = ritual::perform_toss(again, params, 52);
    any_differs = any_differs || out.toss.coins != done.record.tosses()[k].coins;
    again = out.session;
  }
  CHECK(any_differs);
}

TEST_CASE("the wire view hides the casting until it is complete") {
  const GenParams params;
  Session s = ritual::submit_inquiry(ritual::create("v", 3, 0), make_inquiry("q"), 1);
  s = ritual::perform_toss(s, params, 2).session;
  const auto view = session_view(s);
  CHECK(view.at("coins").size() == 1);
  CHECK(view.at("layers")[0].contains("notes"));
  CHECK_FALSE(view.at("layers")[0].contains("loop"));
  CHECK_FALSE(view.contains("record"));
  CHECK_FALSE(view.contains("reading"));
  const auto dump = view.dump();
  for (const char* hidden : {"polarity", "old_yin", "old_yang", "king_wen", "gua_ci", "sum"}) {
    CHECK(dump.find(hidden) == std::string::npos);
  }
  const auto full = session_view(interpreted(3, params));
  CHECK(full.contains("record"));
  CHECK(full.at("plan").is_object());
}

TEST_CASE("session json is stable") {
  const GenParams params;
  const auto a = interpreted(77, params), b = interpreted(77, params);
  CHECK(canonical_json(a) == canonical_json(b));
  CHECK(to_json(a).at("seed") == "77");
}
