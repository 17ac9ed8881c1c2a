#include "doctest.h"

#include <set>

#include "iching/casting.hpp"
#include "iching/chance_music.hpp"
#include "iching/error.hpp"

using namespace iching;

namespace {

// D major pentatonic: D E F# A B.
bool in_d_pentatonic(int pitch) {
  static const std::set<int> pcs = {2, 4, 6, 9, 11};
  return pcs.count(pitch % 12) != 0;
}

MusicPlan plan_with(std::vector<std::string> energy, std::vector<std::string> dynamics,
                    double duration = 45.0) {
  MusicPlan plan;
  plan.prompts = {{"ambient", 1.0}};
  plan.keywords.mood = {"calm"};
  plan.keywords.energy = std::move(energy);
  plan.keywords.dynamics = std::move(dynamics);
  plan.keywords.spatial = {"vast"};
  plan.config.duration_seconds = duration;
  plan.provenance = {"test", "reading-v1", std::string(64, '0')};
  return plan;
}

}  // namespace

TEST_CASE("beats are exact on the quarter grid") {
  CHECK(Beats::from_double(0.25).units() == 240);
  CHECK(Beats::whole(2).seconds(60.0) == doctest::Approx(2.0));
  CHECK(Beats::from_double(1.5) + Beats::from_double(0.5) == Beats::whole(2));
}

TEST_CASE("instrument mapping, registers and pans") {
  CHECK(instrument_for_line(1) == InstrumentId::TaikoDrum);
  CHECK(instrument_for_line(6) == InstrumentId::Flute);
  CHECK(pan_for_line(1) == doctest::Approx(-0.75));
  CHECK(pan_for_line(6) == doctest::Approx(0.75));
  for (auto id : kAllInstruments) CHECK(instrument_from_string(to_string(id)) == id);
  CHECK(register_of(InstrumentId::TaikoDrum).high == 47);
  CHECK(register_of(InstrumentId::Flute).low == 67);
}

TEST_CASE("default parameters give D major pentatonic") {
  const GenParams p;
  CHECK(p.pitch_classes() == std::array<int, 5>{2, 4, 6, 9, 11});
  for (int pitch = 0; pitch < 128; ++pitch) CHECK(p.in_scale(pitch) == in_d_pentatonic(pitch));
}

TEST_CASE("parameter overrides and validation") {
  auto p = gen_params_from_json({{"tempo", 90}, {"scale_root", 0}});
  CHECK(p.tempo == 90.0);
  CHECK(p.scale_root == 0);
  CHECK(p.notes_per_loop == GenParams{}.notes_per_loop);
  CHECK(gen_params_from_json(to_json(p)).tempo == 90.0);
  GenParams bad;
  bad.tempo = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = GenParams{};
  bad.velocity_low = 100;
  bad.velocity_high = 20;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("layers stay in scale and register") {
  const GenParams params;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (int sum = 6; sum <= 9; ++sum) {
      for (int idx = 1; idx <= 6; ++idx) {
        const auto layer = layer_for_line(line_from_sum(sum), idx, params, seed, idx);
        CHECK(layer.loop.size() == static_cast<std::size_t>(params.notes_per_loop));
        CHECK(layer.instrument == instrument_for_line(idx));
        CHECK(layer.loop_length.units() % params.loop_length.units() == 0);
        for (const auto& e : layer.loop) {
          CHECK(in_d_pentatonic(e.pitch));
          CHECK(register_of(layer.instrument).contains(e.pitch));
          CHECK(e.end() <= layer.loop_length);
          CHECK(e.velocity >= params.velocity_low);
          CHECK(e.velocity <= params.velocity_high);
        }
      }
    }
  }
}

TEST_CASE("taiko uses only its two lowest scale pitches") {
  const GenParams params;
  std::set<int> seen;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    for (const auto& e : layer_for_line(line_from_sum(7), 1, params, seed, 1).loop) seen.insert(e.pitch);
  }
  CHECK(seen == std::set<int>{38, 40});
}

TEST_CASE("durations follow the line type menu") {
  const GenParams params;
  for (int sum = 6; sum <= 9; ++sum) {
    const auto& menu = params.durations_for(line_from_sum(sum).type()).beats;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      for (const auto& e : layer_for_line(line_from_sum(sum), 3, params, seed, 3).loop) {
        CHECK(std::find(menu.begin(), menu.end(), e.duration.value()) != menu.end());
      }
    }
  }
}

TEST_CASE("layers are deterministic in seed and stream") {
  const GenParams params;
  const auto a = layer_for_line(line_from_sum(9), 4, params, 11, 4);
  CHECK(a == layer_for_line(line_from_sum(9), 4, params, 11, 4));
  CHECK_FALSE(a == layer_for_line(line_from_sum(9), 4, params, 11, 5));
}

TEST_CASE("accumulating and rendering layers") {
  const GenParams params;
  std::vector<LoopLayer> layers;
  const auto record = cast_hexagram(8);
  for (int i = 1; i <= 6; ++i) {
    layers = accumulate_layers(layers, layer_for_line(record.lines()[i - 1], i, params, 8, i));
  }
  CHECK_THROWS_AS(accumulate_layers(layers, layers[2]), Error);
  CHECK_THROWS_AS(render_casting({}, 1, params), Error);

  const auto stream = render_casting(layers, 3, params);
  CHECK(is_well_formed(stream));
  std::size_t notes = 0;
  Beats longest;
  for (const auto& l : layers) {
    notes += l.loop.size();
    longest = std::max(longest, l.loop_length);
  }
  CHECK(stream.events.size() == notes * 3);
  CHECK(stream.total_duration == doctest::Approx((longest * 3).seconds(params.tempo)));
  CHECK(canonical_json(stream) == canonical_json(render_casting(layers, 3, params)));
}

TEST_CASE("ascending fraction") {
  std::vector<NoteEvent> ev(4);
  ev[0].pitch = 60;
  ev[1].pitch = 62;
  ev[2].pitch = 62;
  ev[3].pitch = 59;
  CHECK(ascending_fraction(ev) == doctest::Approx(0.5));
}

TEST_CASE("ambient realization follows the keyword mapping") {
  const auto still = ambient_settings(plan_with({"still"}, {"soft"}));
  CHECK(still.tempo == 50.0);
  CHECK(still.density_multiplier == 0.4);
  CHECK(still.velocity_high == 56);
  const auto surging = ambient_settings(plan_with({"surging"}, {"bold"}));
  CHECK(surging.tempo == 84.0);
  CHECK(surging.velocity_low == 72);
  CHECK(ambient_settings(plan_with({"unknown"}, {"swelling"})).arched);
  CHECK(spatial_spread({"close"}) == doctest::Approx(0.25));
  CHECK(mood_rotation({"melancholy"}) == 4);
  // 45 * 0.8 * 0.7 * (0.5 + 0.6)
  CHECK(ambient_settings(plan_with({"flowing"}, {"soft"})).event_count == 28);

  for (double d : {30.0, 45.0, 60.0}) {
    const auto plan = plan_with({"surging"}, {"swelling"}, d);
    const auto stream = render_ambient(plan, 17);
    CHECK(stream.total_duration == d);
    CHECK(is_well_formed(stream));
    CHECK(stream == render_ambient(plan, 17));
    for (const auto& e : stream.events) {
      CHECK(in_d_pentatonic(e.pitch));
      CHECK(std::abs(e.pan) <= 0.9);
    }
  }
  CHECK_THROWS_AS(render_ambient(plan_with({"still"}, {"soft"}, 90.0), 1), Error);
}

TEST_CASE("cage charts and composition") {
  const auto& charts = demo_charts();
  CHECK(charts_from_json(to_json(charts)).dynamics == charts.dynamics);
  CHECK_FALSE(charts.sounds[8].has_value());  // king wen 9
  CHECK(cage_chart_select(Hexagram::from_king_wen(2), charts).sound == 2);

  const auto a = cage_compose(30, charts, 5);
  CHECK(a == cage_compose(30, charts, 5));
  CHECK_FALSE(a == cage_compose(30, charts, 6));
  CHECK(is_well_formed(a));
  for (const auto& e : a.events) {
    CHECK(e.instrument == InstrumentId::Koto);
    CHECK(e.pitch >= 60);
    CHECK(e.pitch < 72);
  }
  CHECK_THROWS_AS(cage_compose(0, charts, 1), Error);
  auto j = to_json(charts);
  j["sounds"][0] = 12;
  CHECK_THROWS_AS(charts_from_json(j), Error);
}
