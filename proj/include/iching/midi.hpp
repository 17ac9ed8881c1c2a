#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "iching/music_types.hpp"

namespace iching {

inline constexpr int kPercussionChannel = 9;

// General-MIDI approximations of the six instruments. Programs are 0-based.
struct MidiRenderConfig {
  int ppq = 480;
  std::map<InstrumentId, int> program_map = {
      {InstrumentId::TaikoDrum, 116}, {InstrumentId::Koto, 107},
      {InstrumentId::Shamisen, 106},  {InstrumentId::NylonGuitar, 24},
      {InstrumentId::Shakuhachi, 77}, {InstrumentId::Flute, 73},
  };
  std::map<InstrumentId, int> channel_map = {
      {InstrumentId::TaikoDrum, kPercussionChannel}, {InstrumentId::Koto, 0},
      {InstrumentId::Shamisen, 1},                   {InstrumentId::NylonGuitar, 2},
      {InstrumentId::Shakuhachi, 3},                 {InstrumentId::Flute, 4},
  };

  // Throws InvalidArgument: ppq outside 1..32767, missing or duplicate
  // channels, taiko off the percussion channel, programs outside 0..127.
  void validate() const;
};

// Pan in [-1, 1] as controller-10 value 0..127 (0 -> 64).
int pan_to_controller(double pan);

// Exact for onsets on the 960-units-per-beat grid whenever ppq divides it.
std::int64_t beats_to_ticks(Beats beats, int ppq);

// Standard MIDI File, format 1. Track 0 carries the tempo; one track follows
// per instrument present, in InstrumentId order, each opening with its name,
// program change and controller 10. Pan changes inside a track are emitted
// before the note that needs them. At equal ticks note-offs precede note-ons.
// Throws PitchOutOfRange.
std::vector<std::uint8_t> write_midi(const EventStream& stream, const MidiRenderConfig& config = {});

}  // namespace iching
