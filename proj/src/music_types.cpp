#include "iching/music_types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "iching/casting.hpp"
#include "iching/error.hpp"

namespace iching {

Beats Beats::from_double(double beats) {
  return Beats(static_cast<std::int64_t>(std::llround(beats * kUnitsPerBeat)));
}

std::string_view to_string(InstrumentId id) {
  switch (id) {
    case InstrumentId::TaikoDrum: return "taiko_drum";
    case InstrumentId::Koto: return "koto";
    case InstrumentId::Shamisen: return "shamisen";
    case InstrumentId::NylonGuitar: return "nylon_guitar";
    case InstrumentId::Shakuhachi: return "shakuhachi";
    case InstrumentId::Flute: return "flute";
  }
  return "?";
}

InstrumentId instrument_from_string(std::string_view name) {
  for (InstrumentId id : kAllInstruments) {
    if (to_string(id) == name) return id;
  }
  throw Error(ErrorCode::SchemaError, "unknown instrument `" + std::string(name) + "`");
}

Register register_of(InstrumentId id) {
  switch (id) {
    case InstrumentId::TaikoDrum: return {36, 47};
    case InstrumentId::Koto: return {50, 86};
    case InstrumentId::Shamisen: return {52, 79};
    case InstrumentId::NylonGuitar: return {40, 76};
    case InstrumentId::Shakuhachi: return {62, 88};
    case InstrumentId::Flute: return {67, 96};
  }
  return {0, 127};
}

InstrumentId instrument_for_line(int line_index) {
  if (line_index < 1 || line_index > 6) {
    throw Error(ErrorCode::IndexOutOfRange,
                "line index must be 1..6, got " + std::to_string(line_index));
  }
  return kAllInstruments[line_index - 1];
}

double pan_for_line(int line_index) {
  // Integer hundredths keep the printed values short (-0.45, not -0.44999...).
  return static_cast<double>(-75 + 30 * (line_index - 1)) / 100.0;
}

std::array<int, 5> GenParams::pitch_classes() const {
  std::array<int, 5> pcs{};
  for (std::size_t i = 0; i < 5; ++i) pcs[i] = ((scale_root + pentatonic_degrees[i]) % 12 + 12) % 12;
  std::sort(pcs.begin(), pcs.end());
  return pcs;
}

bool GenParams::in_scale(int pitch) const {
  const auto pcs = pitch_classes();
  return std::find(pcs.begin(), pcs.end(), ((pitch % 12) + 12) % 12) != pcs.end();
}

void GenParams::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (!(tempo > 0.0)) fail("tempo must be positive");
  if (scale_root < 0 || scale_root > 11) fail("scale_root must be a pitch class 0..11");
  auto pcs = pitch_classes();
  for (int d : pentatonic_degrees) {
    if (d < 0 || d > 11) fail("pentatonic degrees must be pitch classes 0..11");
  }
  if (std::adjacent_find(pcs.begin(), pcs.end()) != pcs.end()) {
    fail("pentatonic_degrees must hold 5 distinct pitch classes");
  }
  if (loop_length <= Beats{}) fail("loop_length must be positive");
  if (notes_per_loop < 1) fail("notes_per_loop must be at least 1");
  for (double p : direction_bias) {
    if (!(p >= 0.0 && p <= 1.0)) fail("direction_bias probabilities must lie in [0, 1]");
  }
  for (const auto& menu : duration_weights) {
    if (menu.beats.empty() || menu.beats.size() != menu.weights.size()) {
      fail("duration menus need matching, non-empty beats and weights");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < menu.beats.size(); ++i) {
      if (!(menu.beats[i] > 0.0)) fail("menu durations must be positive");
      if (!(menu.weights[i] >= 0.0)) fail("menu weights must be non-negative");
      total += menu.weights[i];
    }
    if (!(total > 0.0)) fail("menu weights must not all be zero");
  }
  if (step_weights[0] < 0.0 || step_weights[1] < 0.0 || step_weights[0] + step_weights[1] <= 0.0) {
    fail("step_weights must be non-negative with a positive sum");
  }
  if (velocity_low < 1 || velocity_high > 127 || velocity_low > velocity_high) {
    fail("velocity range must satisfy 1 <= low <= high <= 127");
  }
}

namespace {

constexpr std::array<const char*, 4> kLineTypeKeys = {"old_yin", "young_yang", "young_yin",
                                                      "old_yang"};

}  // namespace

nlohmann::json to_json(const GenParams& params) {
  nlohmann::json bias;
  nlohmann::json menus;
  for (std::size_t i = 0; i < 4; ++i) {
    bias[kLineTypeKeys[i]] = params.direction_bias[i];
    menus[kLineTypeKeys[i]] = {{"beats", params.duration_weights[i].beats},
                               {"weights", params.duration_weights[i].weights}};
  }
  return {{"direction_bias", bias},
          {"duration_weights", menus},
          {"loop_length", params.loop_length.value()},
          {"notes_per_loop", params.notes_per_loop},
          {"pentatonic_degrees", params.pentatonic_degrees},
          {"scale_root", params.scale_root},
          {"step_weights", params.step_weights},
          {"tempo", params.tempo},
          {"velocity_high", params.velocity_high},
          {"velocity_low", params.velocity_low}};
}

GenParams gen_params_from_json(const nlohmann::json& j) {
  GenParams p;
  try {
    if (!j.is_object()) throw Error(ErrorCode::SchemaError, "GenParams must be a JSON object");
    if (j.contains("tempo")) p.tempo = j.at("tempo").get<double>();
    if (j.contains("scale_root")) p.scale_root = j.at("scale_root").get<int>();
    if (j.contains("pentatonic_degrees")) {
      auto degrees = j.at("pentatonic_degrees").get<std::vector<int>>();
      if (degrees.size() != 5) throw Error(ErrorCode::InvalidArgument, "need 5 pentatonic degrees");
      std::copy(degrees.begin(), degrees.end(), p.pentatonic_degrees.begin());
    }
    if (j.contains("loop_length")) p.loop_length = Beats::from_double(j.at("loop_length").get<double>());
    if (j.contains("notes_per_loop")) p.notes_per_loop = j.at("notes_per_loop").get<int>();
    if (j.contains("direction_bias")) {
      for (std::size_t i = 0; i < 4; ++i) {
        const auto& bias = j.at("direction_bias");
        if (bias.contains(kLineTypeKeys[i])) p.direction_bias[i] = bias.at(kLineTypeKeys[i]).get<double>();
      }
    }
    if (j.contains("duration_weights")) {
      for (std::size_t i = 0; i < 4; ++i) {
        const auto& menus = j.at("duration_weights");
        if (!menus.contains(kLineTypeKeys[i])) continue;
        const auto& menu = menus.at(kLineTypeKeys[i]);
        p.duration_weights[i].beats = menu.at("beats").get<std::vector<double>>();
        p.duration_weights[i].weights = menu.at("weights").get<std::vector<double>>();
      }
    }
    if (j.contains("step_weights")) {
      auto w = j.at("step_weights").get<std::vector<double>>();
      if (w.size() != 2) throw Error(ErrorCode::InvalidArgument, "step_weights needs two entries");
      p.step_weights = {w[0], w[1]};
    }
    if (j.contains("velocity_low")) p.velocity_low = j.at("velocity_low").get<int>();
    if (j.contains("velocity_high")) p.velocity_high = j.at("velocity_high").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("malformed GenParams: ") + e.what());
  }
  p.validate();
  return p;
}

nlohmann::json to_json(const NoteEvent& e) {
  return {{"duration", e.duration.value()}, {"instrument", to_string(e.instrument)},
          {"onset", e.onset.value()},       {"pan", e.pan},
          {"pitch", e.pitch},               {"velocity", e.velocity}};
}

nlohmann::json to_json(const LoopLayer& layer) {
  nlohmann::json loop = nlohmann::json::array();
  for (const auto& e : layer.loop) loop.push_back(to_json(e));
  return {{"instrument", to_string(layer.instrument)},
          {"line", to_json(layer.line)},
          {"line_index", layer.line_index},
          {"loop", std::move(loop)},
          {"loop_length", layer.loop_length.value()},
          {"pan", layer.pan}};
}

nlohmann::json to_json(const EventStream& stream) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : stream.events) events.push_back(to_json(e));
  return {{"events", std::move(events)},
          {"tempo", stream.tempo},
          {"total_duration", stream.total_duration}};
}

std::string canonical_json(const EventStream& stream) { return to_json(stream).dump(); }

bool is_well_formed(const EventStream& stream) {
  const Beats limit = Beats::from_double(stream.total_duration * stream.tempo / 60.0);
  for (std::size_t i = 0; i < stream.events.size(); ++i) {
    const auto& e = stream.events[i];
    if (i > 0 && e.onset < stream.events[i - 1].onset) return false;
    if (e.onset < Beats{} || e.duration <= Beats{}) return false;
    if (e.velocity < 1 || e.velocity > 127) return false;
    if (e.pitch < 0 || e.pitch > 127) return false;
    if (!(e.pan >= -1.0 && e.pan <= 1.0)) return false;
    if (e.end() > limit) return false;
  }
  return true;
}

}  // namespace iching
