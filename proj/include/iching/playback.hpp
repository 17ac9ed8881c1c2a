#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "iching/music_types.hpp"

namespace iching {

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

// Digest of the stream's canonical JSON.
std::string stream_digest(const EventStream& stream);

struct PlaybackChunk {
  double from_time = 0.0;  // seconds
  double window = 0.0;     // seconds
  double tempo = 72.0;
  double total_duration = 0.0;
  std::vector<NoteEvent> events;
  std::string stream_digest;

  friend bool operator==(const PlaybackChunk&, const PlaybackChunk&) = default;
};

// Events whose onset (in seconds) lies in [from_time, from_time + window).
// Throws InvalidArgument for a negative start or non-positive window.
PlaybackChunk chunk_stream(const EventStream& stream, double from_time, double window_seconds);

// Wire form:
// {"events":[{"duration","instrument","onset","onset_seconds","pan","pitch","velocity"}],
//  "from_time","stream_digest","tempo","total_duration","window"}
nlohmann::json to_json(const PlaybackChunk& chunk);

}  // namespace iching
