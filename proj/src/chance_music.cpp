#include "iching/chance_music.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "iching/error.hpp"
#include "iching/rng.hpp"

namespace iching {

namespace {

std::vector<int> scale_pitches(const GenParams& params, Register reg) {
  std::vector<int> pitches;
  for (int p = reg.low; p <= reg.high; ++p) {
    if (params.in_scale(p)) pitches.push_back(p);
  }
  return pitches;
}

int draw_velocity(Rng& rng, int low, int high) {
  return low + static_cast<int>(rng.below(static_cast<std::size_t>(high - low + 1)));
}

}  // namespace

LoopLayer layer_for_line(const Line& line, int line_index, const GenParams& params,
                         std::uint64_t seed, std::uint64_t stream_index) {
  params.validate();
  const InstrumentId instrument = instrument_for_line(line_index);
  const auto pitches = scale_pitches(params, register_of(instrument));
  if (pitches.size() < 2) {
    throw Error(ErrorCode::InvalidArgument,
                std::string("register of ") + std::string(to_string(instrument)) +
                    " holds fewer than two scale pitches");
  }

  Rng rng = Rng::for_stream(seed, stream_index);
  const LineType type = line.type();
  const DurationMenu& menu = params.durations_for(type);
  const double p_up = params.ascending_probability(type);
  const int top = static_cast<int>(pitches.size()) - 1;

  LoopLayer layer;
  layer.line_index = line_index;
  layer.line = line;
  layer.instrument = instrument;
  layer.pan = pan_for_line(line_index);

  int degree = static_cast<int>(std::lround((1.0 - p_up) * top));
  Beats onset;
  for (int n = 0; n < params.notes_per_loop; ++n) {
    const Beats duration = Beats::from_double(menu.beats[rng.weighted(menu.weights)]);
    int pitch = 0;
    if (instrument == InstrumentId::TaikoDrum) {
      pitch = pitches[rng.below(2)];
    } else {
      if (n > 0) {
        const bool up = rng.bernoulli(p_up);
        const int step = 1 + static_cast<int>(rng.weighted(params.step_weights));
        int next = up ? degree + step : degree - step;
        if (next < 0 || next > top) next = up ? degree - step : degree + step;
        degree = std::clamp(next, 0, top);
      }
      pitch = pitches[degree];
    }
    layer.loop.push_back({onset, duration, pitch,
                          draw_velocity(rng, params.velocity_low, params.velocity_high),
                          instrument, layer.pan});
    onset += duration;
  }

  const std::int64_t unit = params.loop_length.units();
  const std::int64_t bars = std::max<std::int64_t>(1, (onset.units() + unit - 1) / unit);
  layer.loop_length = params.loop_length * bars;
  return layer;
}

std::vector<LoopLayer> accumulate_layers(const std::vector<LoopLayer>& existing,
                                         LoopLayer new_layer) {
  for (const auto& layer : existing) {
    if (layer.line_index == new_layer.line_index) {
      throw Error(ErrorCode::DuplicateLineIndex,
                  "a layer for line " + std::to_string(new_layer.line_index) + " already exists");
    }
  }
  std::vector<LoopLayer> out = existing;
  out.push_back(std::move(new_layer));
  return out;
}

EventStream render_casting(const std::vector<LoopLayer>& layers, int cycles,
                           const GenParams& params) {
  if (layers.empty()) throw Error(ErrorCode::EmptyLayers, "no casting layers to render");
  if (cycles < 1) throw Error(ErrorCode::InvalidArgument, "cycles must be at least 1");

  EventStream stream;
  stream.tempo = params.tempo;
  Beats longest;
  for (const auto& layer : layers) {
    longest = std::max(longest, layer.loop_length);
    for (int c = 0; c < cycles; ++c) {
      const Beats offset = layer.loop_length * c;
      for (NoteEvent e : layer.loop) {
        e.onset += offset;
        stream.events.push_back(e);
      }
    }
  }
  std::stable_sort(stream.events.begin(), stream.events.end(),
                   [](const NoteEvent& a, const NoteEvent& b) { return a.onset < b.onset; });
  stream.total_duration = (longest * cycles).seconds(params.tempo);
  return stream;
}

double ascending_fraction(const std::vector<NoteEvent>& events) {
  int up = 0;
  int moves = 0;
  for (std::size_t i = 1; i < events.size(); ++i) {
    if (events[i].pitch == events[i - 1].pitch) continue;
    ++moves;
    if (events[i].pitch > events[i - 1].pitch) ++up;
  }
  return moves == 0 ? 0.0 : static_cast<double>(up) / moves;
}

namespace {

bool is_one_of(std::string_view word, std::initializer_list<std::string_view> options) {
  return std::find(options.begin(), options.end(), word) != options.end();
}

}  // namespace

double spatial_spread(const std::vector<std::string>& spatial) {
  for (const auto& w : spatial) {
    if (is_one_of(w, {"vast", "open", "expansive", "boundless", "spacious"})) return 0.9;
    if (is_one_of(w, {"distant", "echoing", "wide", "airy", "drifting"})) return 0.7;
    if (is_one_of(w, {"intimate", "close", "enclosed", "narrow", "inward"})) return 0.25;
  }
  return 0.5;
}

int mood_rotation(const std::vector<std::string>& mood) {
  for (const auto& w : mood) {
    if (is_one_of(w, {"calm", "serene", "peaceful", "bright", "joyful", "luminous", "hopeful"}))
      return 0;
    if (is_one_of(w, {"contemplative", "reflective", "patient", "steady", "tender"})) return 1;
    if (is_one_of(w, {"mysterious", "uncertain", "searching", "restless", "wary"})) return 2;
    if (is_one_of(w, {"resolute", "determined", "noble", "proud", "heroic"})) return 3;
    if (is_one_of(w, {"melancholy", "somber", "sorrowful", "grave", "tense", "dark"})) return 4;
  }
  return 0;
}

AmbientSettings ambient_settings(const MusicPlan& plan) {
  AmbientSettings s;
  s.tempo = plan.config.bpm;
  for (const auto& w : plan.keywords.energy) {
    if (w == "still") { s.tempo = 50; s.density_multiplier = 0.4; break; }
    if (w == "flowing") { s.tempo = 66; s.density_multiplier = 0.7; break; }
    if (w == "surging") { s.tempo = 84; s.density_multiplier = 1.0; break; }
  }
  for (const auto& w : plan.keywords.dynamics) {
    if (w == "soft") { s.velocity_low = 28; s.velocity_high = 56; break; }
    if (w == "swelling") { s.velocity_low = 40; s.velocity_high = 92; s.arched = true; break; }
    if (w == "bold") { s.velocity_low = 72; s.velocity_high = 112; break; }
  }
  s.pan_spread = spatial_spread(plan.keywords.spatial);
  s.mode_rotation = mood_rotation(plan.keywords.mood);
  s.event_count = std::max(
      4, static_cast<int>(std::lround(plan.config.duration_seconds * 0.8 * s.density_multiplier *
                                      (0.5 + plan.config.density))));
  return s;
}

EventStream render_ambient(const MusicPlan& plan, std::uint64_t seed) {
  validate_plan(plan);
  const AmbientSettings s = ambient_settings(plan);
  const GenParams scale;  // default pentatonic
  const int centre = (scale.scale_root + scale.pentatonic_degrees[s.mode_rotation]) % 12;

  constexpr std::array<InstrumentId, 4> voices = {InstrumentId::Shakuhachi, InstrumentId::Koto,
                                                  InstrumentId::Flute, InstrumentId::NylonGuitar};
  constexpr std::array<double, 4> voice_weights = {0.3, 0.3, 0.2, 0.2};
  constexpr std::array<double, 5> length_menu = {1.0, 2.0, 3.0, 4.0, 6.0};
  constexpr std::array<double, 5> length_weights = {0.15, 0.25, 0.25, 0.2, 0.15};

  EventStream stream;
  stream.tempo = s.tempo;
  stream.total_duration = plan.config.duration_seconds;

  const Beats total = Beats::from_units(static_cast<std::int64_t>(
      std::floor(plan.config.duration_seconds * s.tempo / 60.0 * Beats::kUnitsPerBeat)));
  const Beats grid = Beats::from_units(Beats::kUnitsPerBeat / 4);
  const auto slots = static_cast<std::size_t>((total - grid).units() / grid.units() + 1);

  Rng rng = Rng::for_stream(seed, stream_id(0, StreamPurpose::Ambient));
  for (int n = 0; n < s.event_count; ++n) {
    NoteEvent e;
    e.onset = grid * static_cast<std::int64_t>(rng.below(slots));
    e.instrument = voices[rng.weighted(voice_weights)];

    const auto candidates = scale_pitches(scale, register_of(e.instrument));
    std::vector<double> pull;
    pull.reserve(candidates.size());
    for (int p : candidates) {
      const int pc = p % 12;
      pull.push_back(pc == centre ? 3.0 : pc == (centre + 7) % 12 ? 2.0 : 1.0);
    }
    e.pitch = candidates[rng.weighted(pull)];

    const Beats wanted = Beats::from_double(length_menu[rng.weighted(length_weights)]);
    e.duration = std::min(wanted, total - e.onset);

    if (s.arched) {
      const double t = static_cast<double>(e.onset.units()) / static_cast<double>(total.units());
      const double env = 0.75 * std::sin(std::numbers::pi * t) + 0.25 * rng.uniform();
      e.velocity = s.velocity_low +
                   static_cast<int>(std::lround(env * (s.velocity_high - s.velocity_low)));
    } else {
      e.velocity = draw_velocity(rng, s.velocity_low, s.velocity_high);
    }
    e.pan = s.pan_spread * (2.0 * rng.uniform() - 1.0);
    stream.events.push_back(e);
  }
  std::stable_sort(stream.events.begin(), stream.events.end(),
                   [](const NoteEvent& a, const NoteEvent& b) { return a.onset < b.onset; });
  return stream;
}

ChanceCharts charts_from_json(const nlohmann::json& j) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::SchemaError, what); };
  if (!j.is_object()) fail("chart file must be a JSON object");
  for (const char* key : {"sounds", "durations", "dynamics"}) {
    if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != 64) {
      fail(std::string("chart `") + key + "` must have exactly 64 entries");
    }
  }
  ChanceCharts charts;
  for (std::size_t i = 0; i < 64; ++i) {
    const auto& sound = j.at("sounds")[i];
    if (sound.is_null()) {
      charts.sounds[i] = std::nullopt;
    } else if (sound.is_number_integer() && sound.get<int>() >= 0 && sound.get<int>() < 12) {
      charts.sounds[i] = sound.get<int>();
    } else {
      fail("chart sounds must be pitch classes 0..11 or null");
    }
    const auto& duration = j.at("durations")[i];
    if (!duration.is_number() || !(duration.get<double>() > 0.0)) fail("chart durations must be positive");
    charts.durations[i] = Beats::from_double(duration.get<double>());
    if (charts.durations[i] <= Beats{}) fail("chart durations must be positive");
    const auto& dynamic = j.at("dynamics")[i];
    if (!dynamic.is_number_integer() || dynamic.get<int>() < 1 || dynamic.get<int>() > 127) {
      fail("chart dynamics must be velocities 1..127");
    }
    charts.dynamics[i] = dynamic.get<int>();
  }
  return charts;
}

nlohmann::json to_json(const ChanceCharts& charts) {
  nlohmann::json sounds = nlohmann::json::array();
  nlohmann::json durations = nlohmann::json::array();
  for (std::size_t i = 0; i < 64; ++i) {
    sounds.push_back(charts.sounds[i] ? nlohmann::json(*charts.sounds[i]) : nlohmann::json(nullptr));
    durations.push_back(charts.durations[i].value());
  }
  return {{"durations", durations}, {"dynamics", charts.dynamics}, {"sounds", sounds}};
}

const ChanceCharts& demo_charts() {
  static const ChanceCharts charts = charts_from_json(nlohmann::json::parse(bundled_charts_json()));
  return charts;
}

ChartSelection cage_chart_select(const Hexagram& hexagram, const ChanceCharts& charts) {
  const auto i = static_cast<std::size_t>(hexagram.king_wen() - 1);
  return {charts.sounds[i], charts.durations[i], charts.dynamics[i]};
}

EventStream cage_compose(int n_events, const ChanceCharts& charts, std::uint64_t seed,
                         double tempo) {
  if (n_events < 1) throw Error(ErrorCode::InvalidArgument, "n_events must be at least 1");
  if (!(tempo > 0.0)) throw Error(ErrorCode::InvalidArgument, "tempo must be positive");

  Rng rng = Rng::for_stream(seed, stream_id(0, StreamPurpose::Cage));
  EventStream stream;
  stream.tempo = tempo;
  Beats cursor;
  for (int n = 0; n < n_events; ++n) {
    std::array<Line, 6> lines;
    for (auto& line : lines) line = line_from_toss(toss_coins(rng));
    const ChartSelection pick = cage_chart_select(build_hexagram(lines), charts);
    if (pick.sound) {
      stream.events.push_back({cursor, pick.duration, 60 + *pick.sound, pick.dynamic,
                               InstrumentId::Koto, 0.0});
    }
    cursor += pick.duration;
  }
  stream.total_duration = cursor.seconds(tempo);
  return stream;
}

}  // namespace iching
