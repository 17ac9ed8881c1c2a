#include "iching/service.hpp"

#include <chrono>
#include <cstdio>

#include "iching/error.hpp"

namespace iching {

std::int64_t system_clock_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

EventLog::EventLog(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  out_.open(path_, std::ios::app | std::ios::binary);
  if (!out_) throw Error(ErrorCode::IoError, "cannot open event log " + path_.string());
}

void EventLog::append(const nlohmann::json& event) {
  std::lock_guard lock(mutex_);
  out_ << event.dump() << '\n';
  out_.flush();
  if (!out_) throw Error(ErrorCode::IoError, "cannot write event log " + path_.string());
}

std::vector<nlohmann::json> EventLog::read() const {
  std::lock_guard lock(mutex_);
  return read_event_log(path_);
}

std::vector<nlohmann::json> read_event_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open event log " + path.string());
  std::vector<nlohmann::json> events;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      events.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::LogCorrupt, "event log line " + std::to_string(number) + ": " + e.what());
    }
    if (!events.back().is_object()) {
      throw Error(ErrorCode::LogCorrupt, "event log line " + std::to_string(number) + " is not an object");
    }
  }
  return events;
}

namespace {

std::optional<std::string> optional_string(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::string>();
}

std::string coin_faces(const CoinToss& toss) { return to_json(toss).at("coins").get<std::string>(); }

}  // namespace

Session replay_session(const std::vector<nlohmann::json>& events, std::string_view id) {
  std::optional<Session> session;
  GenParams params;
  std::uint64_t expected_seq = 0;

  for (const auto& e : events) {
    if (e.value("id", "") != id) continue;
    try {
      const auto seq = e.at("seq").get<std::uint64_t>();
      if (seq != expected_seq) {
        throw Error(ErrorCode::LogCorrupt, "expected event " + std::to_string(expected_seq) +
                                               ", found " + std::to_string(seq));
      }
      ++expected_seq;
      const auto kind = e.at("event").get<std::string>();
      const auto at = e.at("at").get<std::int64_t>();
      if (kind == "create") {
        if (session) throw Error(ErrorCode::LogCorrupt, "session created twice");
        params = gen_params_from_json(e.at("params"));
        session = ritual::create(std::string(id), std::stoull(e.at("seed").get<std::string>()), at);
        continue;
      }
      if (!session) throw Error(ErrorCode::LogCorrupt, "event precedes session creation");
      if (kind == "inquiry") {
        session = ritual::submit_inquiry(
            *session, {e.at("question").get<std::string>(), optional_string(e, "name")}, at);
      } else if (kind == "toss") {
        auto outcome = ritual::perform_toss(*session, params, at);
        if (coin_faces(outcome.toss) != e.at("coins").get<std::string>()) {
          throw Error(ErrorCode::LogCorrupt, "replayed toss disagrees with the logged coins");
        }
        session = std::move(outcome.session);
      } else if (kind == "interpret") {
        session = ritual::apply_interpretation(*session, e.at("raw").get<std::string>(),
                                               e.at("provider").get<std::string>(),
                                               e.at("template_version").get<std::string>(), at);
      } else if (kind == "finish") {
        session = ritual::finish(*session, at);
      } else if (kind == "reset") {
        session = ritual::reset(*session, at);
      } else {
        throw Error(ErrorCode::LogCorrupt, "unknown event `" + kind + "`");
      }
    } catch (const Error& err) {
      if (err.code() == ErrorCode::LogCorrupt) throw;
      throw Error(ErrorCode::LogCorrupt,
                  "session " + std::string(id) + " does not replay: " + err.what());
    } catch (const std::exception& err) {
      throw Error(ErrorCode::LogCorrupt,
                  "session " + std::string(id) + " has a malformed event: " + err.what());
    }
  }
  if (!session) throw Error(ErrorCode::UnknownSession, "no session `" + std::string(id) + "` in log");
  return *session;
}

Session replay_session(const std::filesystem::path& log_path, std::string_view id) {
  return replay_session(read_event_log(log_path), id);
}

SessionService::WriteClaim::WriteClaim(Entry& e) : entry_(e) {
  bool expected = false;
  if (!entry_.writing.compare_exchange_strong(expected, true)) {
    throw Error(ErrorCode::Busy, "another state-changing call on this session is in progress");
  }
}

SessionService::WriteClaim::~WriteClaim() { entry_.writing.store(false); }

SessionService::SessionService(ServiceConfig config, std::shared_ptr<const Corpus> corpus,
                               std::shared_ptr<InterpretationProvider> provider, Clock clock)
    : config_(std::move(config)),
      corpus_(std::move(corpus)),
      provider_(std::move(provider)),
      clock_(std::move(clock)),
      id_rng_(config_.id_seed.value_or(entropy_seed())) {
  config_.params.validate();
  if (config_.log_path) log_ = std::make_unique<EventLog>(*config_.log_path);
}

std::shared_ptr<SessionService::Entry> SessionService::lookup(const std::string& id) {
  std::lock_guard lock(map_mutex_);
  if (auto it = sessions_.find(id); it != sessions_.end()) {
    it->second->last_used = clock_();
    return it->second;
  }
  if (!log_) throw Error(ErrorCode::UnknownSession, "no session `" + id + "`");

  const auto events = log_->read();
  auto entry = std::make_shared<Entry>();
  entry->session = replay_session(events, id);
  for (const auto& e : events) {
    if (e.value("id", "") == id) ++entry->next_seq;
  }
  entry->last_used = clock_();
  sessions_.emplace(id, entry);
  return entry;
}

Session SessionService::read(const std::string& id) {
  auto e = lookup(id);
  std::shared_lock lock(e->mutex);
  return e->session;
}

void SessionService::commit(Entry& e, Session next, nlohmann::json event) {
  std::unique_lock lock(e.mutex);
  if (log_) {
    event["id"] = next.id;
    event["seq"] = e.next_seq;
    event["at"] = next.updated_at;
    log_->append(event);
  }
  ++e.next_seq;
  e.session = std::move(next);
}

Session SessionService::create_session(std::optional<std::uint64_t> seed) {
  evict_idle();
  auto entry = std::make_shared<Entry>();
  {
    std::lock_guard lock(map_mutex_);
    std::string id;
    do {
      char buf[33];
      std::snprintf(buf, sizeof buf, "%016llx%016llx",
                    static_cast<unsigned long long>(id_rng_.next()),
                    static_cast<unsigned long long>(id_rng_.next()));
      id = buf;
    } while (sessions_.count(id) != 0);
    if (!seed) seed = id_rng_.next();
    entry->session = ritual::create(id, *seed, clock_());
    entry->last_used = entry->session.created_at;
    sessions_.emplace(id, entry);
  }
  WriteClaim claim(*entry);
  Session s = entry->session;
  commit(*entry, s,
         {{"event", "create"}, {"seed", std::to_string(s.seed)}, {"params", to_json(config_.params)}});
  return s;
}

Session SessionService::submit_inquiry(const std::string& id, const std::string& question,
                                       const std::optional<std::string>& name) {
  auto e = lookup(id);
  WriteClaim claim(*e);
  Session next = ritual::submit_inquiry(e->session, {question, name}, clock_());
  const auto& inquiry = *next.inquiry;
  commit(*e, next,
         {{"event", "inquiry"},
          {"question", inquiry.question},
          {"name", inquiry.name ? nlohmann::json(*inquiry.name) : nlohmann::json(nullptr)}});
  return next;
}

ritual::TossOutcome SessionService::toss(const std::string& id) {
  auto e = lookup(id);
  WriteClaim claim(*e);
  auto outcome = ritual::perform_toss(e->session, config_.params, clock_());
  commit(*e, outcome.session, {{"event", "toss"}, {"coins", coin_faces(outcome.toss)}});
  return outcome;
}

Session SessionService::interpret(const std::string& id) {
  auto e = lookup(id);
  WriteClaim claim(*e);
  Session current;
  {
    std::shared_lock lock(e->mutex);
    current = e->session;
  }
  const PromptDocument doc = ritual::prompt_for(current, *corpus_, config_.assemble);
  const std::string raw = provider_->complete(doc);
  const std::string provider_id = provider_->id();
  Session next = ritual::apply_interpretation(current, raw, provider_id, doc.template_version, clock_());
  commit(*e, next,
         {{"event", "interpret"},
          {"provider", provider_id},
          {"template_version", doc.template_version},
          {"raw", raw}});
  return next;
}

Session SessionService::finish(const std::string& id) {
  auto e = lookup(id);
  WriteClaim claim(*e);
  Session next = ritual::finish(e->session, clock_());
  commit(*e, next, {{"event", "finish"}});
  return next;
}

Session SessionService::reset(const std::string& id) {
  auto e = lookup(id);
  WriteClaim claim(*e);
  Session next = ritual::reset(e->session, clock_());
  commit(*e, next, {{"event", "reset"}});
  return next;
}

Session SessionService::snapshot(const std::string& id) { return read(id); }

MusicPlan SessionService::plan(const std::string& id) { return ritual::plan_of(read(id)); }

PlaybackChunk SessionService::playback(const std::string& id, double from_time, double window_seconds) {
  return ritual::playback(read(id), from_time, window_seconds, config_.params);
}

std::size_t SessionService::evict_idle() {
  std::lock_guard lock(map_mutex_);
  const auto now = clock_();
  std::size_t dropped = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    auto& e = *it->second;
    if (!e.writing.load() && now - e.last_used > config_.ttl_ms) {
      it = sessions_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

std::size_t SessionService::resident_sessions() const {
  std::lock_guard lock(map_mutex_);
  return sessions_.size();
}

}  // namespace iching
