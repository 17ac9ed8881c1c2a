#pragma once
// Minimal Standard MIDI File reader for tests. Written independently of the
// writer: it only knows the file format.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace midi_test {

struct Note {
  int channel;
  int pitch;
  int velocity;
  std::int64_t on_tick;
  std::int64_t off_tick;
};

struct Track {
  std::string name;
  std::vector<int> programs;                         // program changes, in order
  std::vector<std::pair<std::int64_t, int>> pans;    // (tick, cc10 value)
  std::vector<Note> notes;                           // in note-on order
  std::vector<std::int64_t> tempo_changes;           // microseconds per quarter
  // (tick, kind) with kind 0 = off, 1 = on, in file order
  std::vector<std::pair<std::int64_t, int>> note_sequence;
  bool has_end_of_track = false;
};

struct File {
  int format = -1;
  int division = 0;
  std::vector<Track> tracks;
};

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : b_(bytes) {}

  File read() {
    File f;
    expect("MThd");
    if (u32() != 6) fail("header length");
    f.format = u16();
    const int ntracks = u16();
    f.division = u16();
    for (int t = 0; t < ntracks; ++t) f.tracks.push_back(track());
    if (pos_ != b_.size()) fail("trailing bytes");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw std::runtime_error("midi parse: " + why + " at byte " + std::to_string(pos_));
  }
  std::uint8_t byte() {
    if (pos_ >= b_.size()) fail("unexpected end");
    return b_[pos_++];
  }
  std::uint32_t u16() { return (std::uint32_t(byte()) << 8) | byte(); }
  std::uint32_t u32() { return (u16() << 16) | u16(); }
  void expect(const char* tag) {
    for (int i = 0; i < 4; ++i)
      if (byte() != static_cast<std::uint8_t>(tag[i])) fail(std::string("expected ") + tag);
  }
  std::uint32_t vlq() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      const auto c = byte();
      v = (v << 7) | (c & 0x7F);
      if ((c & 0x80) == 0) return v;
    }
    fail("variable-length quantity too long");
  }

  Track track() {
    expect("MTrk");
    const std::size_t len = u32();
    const std::size_t end = pos_ + len;
    if (end > b_.size()) fail("track overruns file");
    Track t;
    std::int64_t tick = 0;
    int status = 0;
    std::map<std::pair<int, int>, std::vector<std::size_t>> open;
    while (pos_ < end) {
      if (t.has_end_of_track) fail("event after end of track");
      tick += vlq();
      int s = b_[pos_];
      if (s & 0x80) {
        ++pos_;
        status = s;
      } else if (status == 0) {
        fail("running status without status");
      }
      if (status == 0xFF) {
        const int type = byte();
        const std::size_t n = vlq();
        std::string data;
        for (std::size_t i = 0; i < n; ++i) data.push_back(static_cast<char>(byte()));
        if (type == 0x03) t.name = data;
        if (type == 0x51) {
          if (n != 3) fail("tempo length");
          t.tempo_changes.push_back((std::uint8_t(data[0]) << 16) | (std::uint8_t(data[1]) << 8) |
                                    std::uint8_t(data[2]));
        }
        if (type == 0x2F) t.has_end_of_track = true;
        status = 0;
        continue;
      }
      if (status == 0xF0 || status == 0xF7) {
        const std::size_t n = vlq();
        pos_ += n;
        status = 0;
        continue;
      }
      const int kind = status & 0xF0;
      const int channel = status & 0x0F;
      const int d1 = byte();
      const int d2 = (kind == 0xC0 || kind == 0xD0) ? 0 : byte();
      if (d1 > 127 || d2 > 127) fail("data byte out of range");
      if (kind == 0x90 && d2 > 0) {
        open[{channel, d1}].push_back(t.notes.size());
        t.notes.push_back({channel, d1, d2, tick, -1});
        t.note_sequence.push_back({tick, 1});
      } else if (kind == 0x80 || (kind == 0x90 && d2 == 0)) {
        auto& stack = open[{channel, d1}];
        if (stack.empty()) fail("note-off without note-on");
        t.notes[stack.front()].off_tick = tick;
        stack.erase(stack.begin());
        t.note_sequence.push_back({tick, 0});
      } else if (kind == 0xC0) {
        t.programs.push_back(d1);
      } else if (kind == 0xB0 && d1 == 10) {
        t.pans.push_back({tick, d2});
      }
    }
    if (pos_ != end) fail("track length mismatch");
    if (!t.has_end_of_track) fail("missing end of track");
    for (const auto& [key, stack] : open)
      if (!stack.empty()) fail("unterminated note");
    return t;
  }

  const std::vector<std::uint8_t>& b_;
  std::size_t pos_ = 0;
};

inline File parse(const std::vector<std::uint8_t>& bytes) { return Reader(bytes).read(); }

}  // namespace midi_test
