#include "iching/midi.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <string_view>

#include "iching/error.hpp"

namespace iching {

namespace {

class ByteWriter {
 public:
  void u8(int v) { out_.push_back(static_cast<std::uint8_t>(v)); }
  void u16(int v) {
    u8((v >> 8) & 0xFF);
    u8(v & 0xFF);
  }
  void u32(std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) u8(static_cast<int>((v >> shift) & 0xFF));
  }
  void varlen(std::uint32_t v) {
    std::uint8_t buf[5];
    int n = 0;
    buf[n++] = v & 0x7F;
    while ((v >>= 7) != 0) buf[n++] = static_cast<std::uint8_t>((v & 0x7F) | 0x80);
    while (n > 0) u8(buf[--n]);
  }
  void text(std::string_view s) {
    for (char c : s) u8(static_cast<unsigned char>(c));
  }
  void bytes(const std::vector<std::uint8_t>& b) { out_.insert(out_.end(), b.begin(), b.end()); }
  std::vector<std::uint8_t>& data() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

struct TimedMessage {
  std::int64_t tick;
  int order;  // 0 = controller, 1 = note-off, 2 = note-on; sorted within a tick
  std::size_t sequence;
  std::vector<std::uint8_t> bytes;
};

void append_chunk(ByteWriter& file, const char* tag, ByteWriter& body) {
  file.text(tag);
  file.u32(static_cast<std::uint32_t>(body.data().size()));
  file.bytes(body.data());
}

void end_of_track(ByteWriter& track) {
  track.varlen(0);
  track.u8(0xFF);
  track.u8(0x2F);
  track.u8(0x00);
}

}  // namespace

void MidiRenderConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (ppq < 1 || ppq > 0x7FFF) fail("ppq must be 1..32767");
  std::set<int> used;
  for (InstrumentId id : kAllInstruments) {
    auto ch = channel_map.find(id);
    auto prog = program_map.find(id);
    if (ch == channel_map.end() || prog == program_map.end()) {
      fail("missing channel or program for " + std::string(to_string(id)));
    }
    if (ch->second < 0 || ch->second > 15) fail("channels must be 0..15");
    if (!used.insert(ch->second).second) fail("instruments must use distinct channels");
    if (prog->second < 0 || prog->second > 127) fail("programs must be 0..127");
    if ((id == InstrumentId::TaikoDrum) != (ch->second == kPercussionChannel)) {
      fail("the taiko alone is routed to the percussion channel");
    }
  }
}

int pan_to_controller(double pan) {
  const double clamped = std::clamp(pan, -1.0, 1.0);
  return std::clamp(static_cast<int>(std::lround((clamped + 1.0) * 63.5)), 0, 127);
}

std::int64_t beats_to_ticks(Beats beats, int ppq) {
  // Round half away from zero on the exact rational units * ppq / 960.
  const std::int64_t num = beats.units() * ppq;
  const std::int64_t den = Beats::kUnitsPerBeat;
  return (num >= 0 ? num + den / 2 : num - den / 2) / den;
}

std::vector<std::uint8_t> write_midi(const EventStream& stream, const MidiRenderConfig& config) {
  config.validate();
  if (!(stream.tempo > 0.0)) throw Error(ErrorCode::InvalidArgument, "stream tempo must be positive");
  for (const auto& e : stream.events) {
    if (e.pitch < 0 || e.pitch > 127) {
      throw Error(ErrorCode::PitchOutOfRange, "pitch " + std::to_string(e.pitch) + " is outside 0..127");
    }
    if (e.velocity < 1 || e.velocity > 127) {
      throw Error(ErrorCode::InvalidArgument, "velocity must be 1..127");
    }
  }

  std::vector<InstrumentId> present;
  for (InstrumentId id : kAllInstruments) {
    if (std::any_of(stream.events.begin(), stream.events.end(),
                    [id](const NoteEvent& e) { return e.instrument == id; })) {
      present.push_back(id);
    }
  }

  ByteWriter file;
  ByteWriter header;
  header.u16(1);
  header.u16(static_cast<int>(present.size()) + 1);
  header.u16(config.ppq);
  append_chunk(file, "MThd", header);

  {
    ByteWriter track;
    const auto usec = static_cast<std::uint32_t>(std::lround(60'000'000.0 / stream.tempo));
    track.varlen(0);
    track.u8(0xFF);
    track.u8(0x51);
    track.u8(0x03);
    track.u8(static_cast<int>((usec >> 16) & 0xFF));
    track.u8(static_cast<int>((usec >> 8) & 0xFF));
    track.u8(static_cast<int>(usec & 0xFF));
    end_of_track(track);
    append_chunk(file, "MTrk", track);
  }

  for (InstrumentId id : present) {
    const int channel = config.channel_map.at(id);
    const int program = config.program_map.at(id);
    ByteWriter track;

    const std::string_view name = to_string(id);
    track.varlen(0);
    track.u8(0xFF);
    track.u8(0x03);
    track.varlen(static_cast<std::uint32_t>(name.size()));
    track.text(name);
    track.varlen(0);
    track.u8(0xC0 | channel);
    track.u8(program);

    int current_pan = 64;
    for (const auto& e : stream.events) {
      if (e.instrument == id) {
        current_pan = pan_to_controller(e.pan);
        break;
      }
    }
    track.varlen(0);
    track.u8(0xB0 | channel);
    track.u8(10);
    track.u8(current_pan);

    std::vector<TimedMessage> messages;
    std::size_t seq = 0;
    for (const auto& e : stream.events) {
      if (e.instrument != id) continue;
      const std::int64_t on = beats_to_ticks(e.onset, config.ppq);
      const std::int64_t off = beats_to_ticks(e.end(), config.ppq);
      const int pan = pan_to_controller(e.pan);
      if (pan != current_pan) {
        messages.push_back({on, 0, seq++,
                            {static_cast<std::uint8_t>(0xB0 | channel), 10, static_cast<std::uint8_t>(pan)}});
        current_pan = pan;
      }
      messages.push_back({on, 2, seq++,
                          {static_cast<std::uint8_t>(0x90 | channel), static_cast<std::uint8_t>(e.pitch),
                           static_cast<std::uint8_t>(e.velocity)}});
      messages.push_back({std::max(off, on + 1), 1, seq++,
                          {static_cast<std::uint8_t>(0x80 | channel), static_cast<std::uint8_t>(e.pitch),
                           0}});
    }
    std::stable_sort(messages.begin(), messages.end(), [](const TimedMessage& a, const TimedMessage& b) {
      if (a.tick != b.tick) return a.tick < b.tick;
      if (a.order != b.order) return a.order < b.order;
      return a.sequence < b.sequence;
    });

    std::int64_t last = 0;
    for (const auto& m : messages) {
      track.varlen(static_cast<std::uint32_t>(m.tick - last));
      track.bytes(m.bytes);
      last = m.tick;
    }
    end_of_track(track);
    append_chunk(file, "MTrk", track);
  }
  return std::move(file.data());
}

}  // namespace iching
