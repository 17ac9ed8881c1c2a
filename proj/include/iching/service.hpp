#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "json.hpp"

#include "iching/rng.hpp"
#include "iching/session.hpp"

namespace iching {

// Unix milliseconds.
using Clock = std::function<std::int64_t()>;
std::int64_t system_clock_ms();

struct ServiceConfig {
  std::optional<std::filesystem::path> log_path;
  std::int64_t ttl_ms = 60 * 60 * 1000;
  GenParams params;
  AssembleOptions assemble;
  // Fixes session ids and default seeds; entropy when absent.
  std::optional<std::uint64_t> id_seed;
};

// Append-only JSON Lines file. Each event is written and flushed as one line.
class EventLog {
 public:
  explicit EventLog(std::filesystem::path path);

  void append(const nlohmann::json& event);
  std::vector<nlohmann::json> read() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::mutex mutex_;
  std::ofstream out_;
};

// Throws IoError if unreadable, LogCorrupt on a malformed line.
std::vector<nlohmann::json> read_event_log(const std::filesystem::path& path);

// Rebuilds one session from its logged events through the pure transitions.
// Throws UnknownSession if the log never created `id`, LogCorrupt if the
// events do not replay cleanly.
Session replay_session(const std::vector<nlohmann::json>& events, std::string_view id);
Session replay_session(const std::filesystem::path& log_path, std::string_view id);

class SessionService {
 public:
  SessionService(ServiceConfig config, std::shared_ptr<const Corpus> corpus,
                 std::shared_ptr<InterpretationProvider> provider, Clock clock = system_clock_ms);

  Session create_session(std::optional<std::uint64_t> seed = std::nullopt);
  Session submit_inquiry(const std::string& id, const std::string& question,
                         const std::optional<std::string>& name);
  ritual::TossOutcome toss(const std::string& id);
  // The provider call runs without holding the session lock, so reads and
  // playback continue meanwhile. Failures leave the session in Interpreting.
  Session interpret(const std::string& id);
  Session finish(const std::string& id);
  Session reset(const std::string& id);

  Session snapshot(const std::string& id);
  MusicPlan plan(const std::string& id);
  PlaybackChunk playback(const std::string& id, double from_time, double window_seconds);

  // Drops sessions idle past the TTL. With a log configured they are
  // restored by replay on next access.
  std::size_t evict_idle();
  std::size_t resident_sessions() const;

  const ServiceConfig& config() const { return config_; }

 private:
  struct Entry {
    std::shared_mutex mutex;
    std::atomic<bool> writing{false};
    Session session;
    std::uint64_t next_seq = 0;
    std::int64_t last_used = 0;
  };

  class WriteClaim {
   public:
    explicit WriteClaim(Entry& e);
    ~WriteClaim();
    WriteClaim(const WriteClaim&) = delete;
    WriteClaim& operator=(const WriteClaim&) = delete;

   private:
    Entry& entry_;
  };

  std::shared_ptr<Entry> lookup(const std::string& id);
  Session read(const std::string& id);
  void commit(Entry& e, Session next, nlohmann::json event);

  ServiceConfig config_;
  std::shared_ptr<const Corpus> corpus_;
  std::shared_ptr<InterpretationProvider> provider_;
  Clock clock_;
  std::unique_ptr<EventLog> log_;

  mutable std::mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  Rng id_rng_;
};

}  // namespace iching
