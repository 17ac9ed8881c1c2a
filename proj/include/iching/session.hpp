#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "iching/casting.hpp"
#include "iching/chance_music.hpp"
#include "iching/corpus.hpp"
#include "iching/interpretation.hpp"
#include "iching/playback.hpp"

namespace iching {

enum class Phase { Intake, Casting, Interpreting, Playback, Complete };

struct SessionState {
  Phase phase = Phase::Intake;
  int tosses_done = 0;  // meaningful while casting

  friend bool operator==(const SessionState&, const SessionState&) = default;
};

// "intake", "casting(3)", "interpreting", "playback", "complete"
std::string to_string(const SessionState& state);

struct Session {
  std::string id;
  std::uint64_t seed = 0;
  std::uint64_t epoch = 0;  // bumped by reset; selects fresh RNG streams
  std::optional<Inquiry> inquiry;
  SessionState state;
  CastingRecord record;
  std::vector<LoopLayer> layers;
  std::optional<Reading> reading;
  std::optional<MusicPlan> plan;
  std::int64_t created_at = 0;  // unix milliseconds
  std::int64_t updated_at = 0;

  friend bool operator==(const Session&, const Session&) = default;
};

// Pure transitions of the ritual. Each returns the successor session and
// leaves its argument untouched; illegal calls throw InvalidState.
namespace ritual {

Session create(std::string id, std::uint64_t seed, std::int64_t now);

// Intake -> Casting(0). Throws EmptyQuestion via make_inquiry.
Session submit_inquiry(const Session& s, const Inquiry& inquiry, std::int64_t now);

struct TossOutcome {
  Session session;
  CoinToss toss;
  Line line;
  LoopLayer layer;
};

// Casting(k) -> Casting(k + 1); the sixth toss completes the record and
// moves to Interpreting.
TossOutcome perform_toss(const Session& s, const GenParams& params, std::int64_t now);

// The document the provider will see. Requires Interpreting.
PromptDocument prompt_for(const Session& s, const Corpus& corpus, const AssembleOptions& options);

// Interpreting -> Playback, from raw provider output. Throws
// MalformedProviderOutput (session unchanged).
Session apply_interpretation(const Session& s, std::string_view raw_output,
                             std::string_view provider_id, std::string_view template_version,
                             std::int64_t now);

// Playback -> Complete.
Session finish(const Session& s, std::int64_t now);

// Any state -> Intake with no layers, record or inquiry. Keeps id, seed and
// created_at; moves to the next epoch.
Session reset(const Session& s, std::int64_t now);

// Throws PlanNotReady.
const MusicPlan& plan_of(const Session& s);

// Seed for the ambient realization of the current epoch.
std::uint64_t ambient_seed(const Session& s);

// Casting loops (looped to cover the window) before Playback, the ambient
// rendering afterwards. Throws InvalidState during Intake.
PlaybackChunk playback(const Session& s, double from_time, double window_seconds,
                       const GenParams& params);

}  // namespace ritual

nlohmann::json layer_summary(const LoopLayer& layer);

// Full serialization, used for replay comparison.
nlohmann::json to_json(const Session& s);
std::string canonical_json(const Session& s);

// Wire view. Before Interpreting it carries coin faces and layer summaries
// only: no lines, hexagrams, texts or reading.
nlohmann::json session_view(const Session& s);

}  // namespace iching
