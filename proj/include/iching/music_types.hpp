#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "iching/hexagram.hpp"

namespace iching {

// Musical time in fixed point: 960 units per beat, so every quarter-beat
// grid position (and every tick at ppq 480) is exact.
class Beats {
 public:
  static constexpr std::int64_t kUnitsPerBeat = 960;

  constexpr Beats() = default;
  static constexpr Beats from_units(std::int64_t units) { return Beats(units); }
  static Beats from_double(double beats);
  static constexpr Beats whole(std::int64_t beats) { return Beats(beats * kUnitsPerBeat); }

  constexpr std::int64_t units() const { return units_; }
  constexpr double value() const { return static_cast<double>(units_) / kUnitsPerBeat; }
  double seconds(double tempo_bpm) const { return value() * 60.0 / tempo_bpm; }

  constexpr Beats operator+(Beats o) const { return Beats(units_ + o.units_); }
  constexpr Beats operator-(Beats o) const { return Beats(units_ - o.units_); }
  constexpr Beats operator*(std::int64_t k) const { return Beats(units_ * k); }
  constexpr Beats& operator+=(Beats o) {
    units_ += o.units_;
    return *this;
  }
  constexpr auto operator<=>(const Beats&) const = default;

 private:
  constexpr explicit Beats(std::int64_t units) : units_(units) {}
  std::int64_t units_ = 0;
};

enum class InstrumentId { TaikoDrum, Koto, Shamisen, NylonGuitar, Shakuhachi, Flute };

inline constexpr std::array<InstrumentId, 6> kAllInstruments = {
    InstrumentId::TaikoDrum,   InstrumentId::Koto,       InstrumentId::Shamisen,
    InstrumentId::NylonGuitar, InstrumentId::Shakuhachi, InstrumentId::Flute};

struct Register {
  int low;
  int high;
  bool contains(int pitch) const { return pitch >= low && pitch <= high; }
};

std::string_view to_string(InstrumentId id);
InstrumentId instrument_from_string(std::string_view name);
Register register_of(InstrumentId id);

// Casting layers: line 1 -> taiko, 2 -> koto, 3 -> shamisen,
// 4 -> nylon guitar, 5 -> shakuhachi, 6 -> flute.
InstrumentId instrument_for_line(int line_index);

// -0.75 + 0.3 * (line_index - 1)
double pan_for_line(int line_index);

struct NoteEvent {
  Beats onset;
  Beats duration;
  int pitch = 60;
  int velocity = 64;
  InstrumentId instrument = InstrumentId::Koto;
  double pan = 0.0;

  Beats end() const { return onset + duration; }
  friend bool operator==(const NoteEvent&, const NoteEvent&) = default;
};

struct LoopLayer {
  int line_index = 1;
  Line line;
  InstrumentId instrument = InstrumentId::TaikoDrum;
  std::vector<NoteEvent> loop;
  Beats loop_length;
  double pan = 0.0;

  friend bool operator==(const LoopLayer&, const LoopLayer&) = default;
};

struct EventStream {
  std::vector<NoteEvent> events;
  double total_duration = 0.0;  // seconds
  double tempo = 72.0;          // BPM

  double onset_seconds(const NoteEvent& e) const { return e.onset.seconds(tempo); }
  friend bool operator==(const EventStream&, const EventStream&) = default;
};

struct DurationMenu {
  std::vector<double> beats;
  std::vector<double> weights;
};

// Generation parameters for the casting layers. Per-line-type tables are
// indexed by LineType (old yin, young yang, young yin, old yang).
struct GenParams {
  double tempo = 72.0;
  int scale_root = 2;
  std::array<int, 5> pentatonic_degrees = {0, 2, 4, 7, 9};
  Beats loop_length = Beats::whole(8);
  int notes_per_loop = 8;
  std::array<double, 4> direction_bias = {0.3, 0.6, 0.4, 0.7};
  std::array<DurationMenu, 4> duration_weights = {
      DurationMenu{{0.25, 0.5, 1.0}, {0.5, 0.3, 0.2}},
      DurationMenu{{0.5, 1.0, 1.5}, {1.0, 1.0, 1.0}},
      DurationMenu{{0.5, 1.0, 1.5}, {1.0, 1.0, 1.0}},
      DurationMenu{{1.0, 1.5, 2.0}, {0.2, 0.3, 0.5}},
  };
  std::array<double, 2> step_weights = {0.7, 0.3};  // one or two scale degrees
  int velocity_low = 56;
  int velocity_high = 96;

  double ascending_probability(LineType t) const { return direction_bias[static_cast<int>(t)]; }
  const DurationMenu& durations_for(LineType t) const {
    return duration_weights[static_cast<int>(t)];
  }

  // Absolute pitch classes: (scale_root + degree) mod 12, ascending.
  std::array<int, 5> pitch_classes() const;
  bool in_scale(int pitch) const;

  // Throws InvalidArgument when a field is out of its domain.
  void validate() const;
};

nlohmann::json to_json(const GenParams& params);
// Missing keys keep their defaults, so a file may override only a few fields.
GenParams gen_params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const NoteEvent& event);
nlohmann::json to_json(const LoopLayer& layer);
nlohmann::json to_json(const EventStream& stream);
std::string canonical_json(const EventStream& stream);

// Checks the EventStream invariants: sorted onsets, positive durations,
// velocities 1..127, pans in [-1, 1], every event ending by total_duration.
bool is_well_formed(const EventStream& stream);

}  // namespace iching
