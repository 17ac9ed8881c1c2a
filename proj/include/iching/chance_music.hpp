#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "iching/hexagram.hpp"
#include "iching/music_types.hpp"
#include "iching/plan.hpp"

namespace iching {

// One looped layer for a freshly cast line.
//
// Melodic instruments run a biased random walk over the scale pitches that
// fall inside their register: each step rises with the line type's
// ascending probability, moves one or two scale degrees (step_weights),
// and reflects off the register edges. The walk starts at the fraction
// (1 - p_up) of the register so the expected drift has room. The taiko
// alternates freely between its two lowest in-scale pitches.
//
// Durations are drawn from the line type's menu. The loop length is the
// smallest multiple of params.loop_length that holds every note.
LoopLayer layer_for_line(const Line& line, int line_index, const GenParams& params,
                         std::uint64_t seed, std::uint64_t stream_index);

// Throws DuplicateLineIndex if the new layer's line is already present.
std::vector<LoopLayer> accumulate_layers(const std::vector<LoopLayer>& existing,
                                         LoopLayer new_layer);

// Unrolls each layer `cycles` times at params.tempo and merges the result.
// Events with equal onsets keep layer order. Throws EmptyLayers.
EventStream render_casting(const std::vector<LoopLayer>& layers, int cycles,
                           const GenParams& params);

// Fraction of pitch-changing intervals in `events` that rise.
double ascending_fraction(const std::vector<NoteEvent>& events);

// Deterministic local realization of a music plan.
//
// Mapping from plan keywords (first recognized keyword wins):
//   energy   still / flowing / surging -> tempo 50 / 66 / 84 BPM and density
//            multiplier 0.4 / 0.7 / 1.0; otherwise config.bpm and 0.7
//   dynamics soft -> velocities 28..56 flat; swelling -> 40..92 arched;
//            bold -> 72..112 flat; otherwise 40..80 flat
//   spatial  see spatial_spread()
//   mood     see mood_rotation(); picks the tonal centre among the five
//            pentatonic pitch classes
// Event count = max(4, round(duration_seconds * 0.8 * multiplier *
// (0.5 + config.density))). Total duration is config.duration_seconds.
EventStream render_ambient(const MusicPlan& plan, std::uint64_t seed);

struct AmbientSettings {
  double tempo = 66.0;
  double density_multiplier = 0.7;
  int velocity_low = 40;
  int velocity_high = 80;
  bool arched = false;
  double pan_spread = 0.5;
  int mode_rotation = 0;
  int event_count = 0;
};

AmbientSettings ambient_settings(const MusicPlan& plan);
double spatial_spread(const std::vector<std::string>& spatial);
int mood_rotation(const std::vector<std::string>& mood);

// Cage-style charts: 64 entries each, indexed by King Wen number.
struct ChanceCharts {
  std::array<std::optional<int>, 64> sounds{};  // pitch class or silence
  std::array<Beats, 64> durations{};
  std::array<int, 64> dynamics{};
};

// Chart file: {"sounds":[pc|null x64], "durations":[beats x64],
// "dynamics":[velocity x64]}. Throws SchemaError.
ChanceCharts charts_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ChanceCharts& charts);
const ChanceCharts& demo_charts();
std::string_view bundled_charts_json();

struct ChartSelection {
  std::optional<int> sound;
  Beats duration;
  int dynamic = 64;
  friend bool operator==(const ChartSelection&, const ChartSelection&) = default;
};

ChartSelection cage_chart_select(const Hexagram& hexagram, const ChanceCharts& charts);

// n_events six-toss casts, one chart selection each. Sounds become koto
// notes at 60 + pitch class; silences advance time without an event.
EventStream cage_compose(int n_events, const ChanceCharts& charts, std::uint64_t seed,
                         double tempo = 72.0);

}  // namespace iching
