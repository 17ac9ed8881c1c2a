#include "iching/playback.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>

#include "iching/error.hpp"

namespace iching {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::InvalidArgument, "SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0x0F]);
  }
  return out;
}

std::string stream_digest(const EventStream& stream) { return sha256_hex(canonical_json(stream)); }

PlaybackChunk chunk_stream(const EventStream& stream, double from_time, double window_seconds) {
  if (!(from_time >= 0.0) || !std::isfinite(from_time)) {
    throw Error(ErrorCode::InvalidArgument, "from_time must be a finite value >= 0");
  }
  if (!(window_seconds > 0.0) || !std::isfinite(window_seconds)) {
    throw Error(ErrorCode::InvalidArgument, "window must be positive");
  }
  PlaybackChunk chunk;
  chunk.from_time = from_time;
  chunk.window = window_seconds;
  chunk.tempo = stream.tempo;
  chunk.total_duration = stream.total_duration;
  chunk.stream_digest = stream_digest(stream);
  const double until = from_time + window_seconds;
  for (const auto& e : stream.events) {
    const double t = stream.onset_seconds(e);
    if (t >= from_time && t < until) chunk.events.push_back(e);
  }
  return chunk;
}

nlohmann::json to_json(const PlaybackChunk& chunk) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : chunk.events) {
    auto j = to_json(e);
    j["onset_seconds"] = e.onset.seconds(chunk.tempo);
    events.push_back(std::move(j));
  }
  return {{"events", std::move(events)},
          {"from_time", chunk.from_time},
          {"stream_digest", chunk.stream_digest},
          {"tempo", chunk.tempo},
          {"total_duration", chunk.total_duration},
          {"window", chunk.window}};
}

}  // namespace iching
