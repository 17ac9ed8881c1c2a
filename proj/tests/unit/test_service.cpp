#include "doctest.h"

#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <thread>

#include "iching/error.hpp"
#include "iching/service.hpp"

using namespace iching;

namespace {

std::shared_ptr<const Corpus> corpus() {
  return std::shared_ptr<const Corpus>(&bundled_corpus(), [](const Corpus*) {});
}

struct FakeClock {
  std::shared_ptr<std::int64_t> now = std::make_shared<std::int64_t>(1'700'000'000'000);
  Clock clock() const {
    return [n = now] { return (*n)++; };
  }
};

std::filesystem::path temp_log(const char* name) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove(p);
  return p;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an iching::Error");
  return ErrorCode::InvalidState;
}

// Blocks inside complete() until released.
class GateProvider final : public InterpretationProvider {
 public:
  std::string id() const override { return "gate"; }
  std::string complete(const PromptDocument& doc) override {
    std::unique_lock lock(m_);
    entered_ = true;
    cv_.notify_all();
    cv_.wait(lock, [&] { return open_; });
    if (fail_) throw Error(ErrorCode::ProviderUnavailable, "offline");
    return mock_.complete(doc);
  }
  void wait_entered() {
    std::unique_lock lock(m_);
    cv_.wait(lock, [&] { return entered_; });
  }
  void release(bool fail) {
    std::lock_guard lock(m_);
    open_ = true;
    fail_ = fail;
    cv_.notify_all();
  }

 private:
  std::mutex m_;
  std::condition_variable cv_;
  bool entered_ = false, open_ = false, fail_ = false;
  MockProvider mock_;
};

}  // namespace

TEST_CASE("service drives a session end to end and logs it") {
  const auto log = temp_log("iching-service-test.jsonl");
  FakeClock clock;
  ServiceConfig config;
  config.log_path = log;
  config.id_seed = 1;
  SessionService service(config, corpus(), std::make_shared<MockProvider>(), clock.clock());

  const auto created = service.create_session(1234);
  const auto& id = created.id;
  CHECK(id.size() == 32);
  CHECK(created.seed == 1234);
  service.submit_inquiry(id, "What should I attend to?", std::string("Ren"));
  for (int k = 0; k < 6; ++k) service.toss(id);
  CHECK(code_of([&] { service.plan(id); }) == ErrorCode::PlanNotReady);
  const auto done = service.interpret(id);
  CHECK(to_string(done.state) == "playback");
  CHECK(service.plan(id) == *done.plan);
  CHECK_FALSE(service.playback(id, 0, 20).events.empty());
  service.finish(id);

  const auto live = canonical_json(service.snapshot(id));
  CHECK(canonical_json(replay_session(log, id)) == live);

  service.reset(id);
  service.submit_inquiry(id, "And now?", std::nullopt);
  service.toss(id);
  CHECK(canonical_json(replay_session(log, id)) == canonical_json(service.snapshot(id)));
  CHECK(code_of([&] { service.snapshot("nope"); }) == ErrorCode::UnknownSession);
}

TEST_CASE("idle sessions are evicted and restored from the log") {
  const auto log = temp_log("iching-evict-test.jsonl");
  FakeClock clock;
  ServiceConfig config;
  config.log_path = log;
  config.ttl_ms = 1000;
  SessionService service(config, corpus(), std::make_shared<MockProvider>(), clock.clock());
  const auto id = service.create_session(5).id;
  service.submit_inquiry(id, "q", std::nullopt);
  service.toss(id);
  const auto before = canonical_json(service.snapshot(id));
  *clock.now += 5000;
  CHECK(service.evict_idle() == 1);
  CHECK(service.resident_sessions() == 0);
  CHECK(canonical_json(service.snapshot(id)) == before);
  service.toss(id);
  CHECK(service.snapshot(id).record.tosses().size() == 2);
  CHECK(canonical_json(replay_session(log, id)) == canonical_json(service.snapshot(id)));
}

TEST_CASE("without a log eviction forgets the session") {
  FakeClock clock;
  ServiceConfig config;
  config.ttl_ms = 10;
  SessionService service(config, corpus(), std::make_shared<MockProvider>(), clock.clock());
  const auto id = service.create_session().id;
  *clock.now += 100;
  service.evict_idle();
  CHECK(code_of([&] { service.snapshot(id); }) == ErrorCode::UnknownSession);
}

TEST_CASE("concurrent writes are refused while interpretation runs") {
  auto gate = std::make_shared<GateProvider>();
  SessionService service(ServiceConfig{}, corpus(), gate);
  const auto id = service.create_session(8).id;
  service.submit_inquiry(id, "q", std::nullopt);
  for (int k = 0; k < 6; ++k) service.toss(id);

  std::optional<ErrorCode> worker_error;
  std::thread worker([&] {
    try {
      service.interpret(id);
    } catch (const Error& e) {
      worker_error = e.code();
    }
  });
  gate->wait_entered();
  CHECK(code_of([&] { service.reset(id); }) == ErrorCode::Busy);
  CHECK(code_of([&] { service.interpret(id); }) == ErrorCode::Busy);
  CHECK(to_string(service.snapshot(id).state) == "interpreting");
  CHECK_FALSE(service.playback(id, 0, 10).events.empty());
  gate->release(true);
  worker.join();
  CHECK(worker_error == ErrorCode::ProviderUnavailable);
  CHECK(to_string(service.snapshot(id).state) == "interpreting");
  service.reset(id);
  CHECK(to_string(service.snapshot(id).state) == "intake");
}

TEST_CASE("tampered logs are reported") {
  const auto log = temp_log("iching-corrupt-test.jsonl");
  {
    ServiceConfig config;
    config.log_path = log;
    SessionService service(config, corpus(), std::make_shared<MockProvider>());
    const auto id = service.create_session(3).id;
    service.submit_inquiry(id, "q", std::nullopt);
    service.toss(id);
    auto events = read_event_log(log);
    events.back()["coins"] = events.back()["coins"] == "HHH" ? "TTT" : "HHH";
    CHECK(code_of([&] { replay_session(events, id); }) == ErrorCode::LogCorrupt);
    events.pop_back();
    events.push_back(events.back());
    CHECK(code_of([&] { replay_session(events, id); }) == ErrorCode::LogCorrupt);
    CHECK(code_of([&] { replay_session(events, "missing"); }) == ErrorCode::UnknownSession);
  }
  std::ofstream(log, std::ios::app) << "{broken\n";
  CHECK(code_of([&] { read_event_log(log); }) == ErrorCode::LogCorrupt);
}
