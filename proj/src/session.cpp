#include "iching/session.hpp"

#include <algorithm>
#include <cmath>

#include "iching/error.hpp"

namespace iching {

std::string to_string(const SessionState& state) {
  switch (state.phase) {
    case Phase::Intake: return "intake";
    case Phase::Casting: return "casting(" + std::to_string(state.tosses_done) + ")";
    case Phase::Interpreting: return "interpreting";
    case Phase::Playback: return "playback";
    case Phase::Complete: return "complete";
  }
  return "?";
}

namespace ritual {

namespace {

[[noreturn]] void invalid(const Session& s, const char* action) {
  throw Error(ErrorCode::InvalidState,
              std::string("cannot ") + action + " in state " + to_string(s.state));
}

}  // namespace

Session create(std::string id, std::uint64_t seed, std::int64_t now) {
  Session s;
  s.id = std::move(id);
  s.seed = seed;
  s.record = CastingRecord(seed);
  s.created_at = now;
  s.updated_at = now;
  return s;
}

Session submit_inquiry(const Session& s, const Inquiry& inquiry, std::int64_t now) {
  if (s.state.phase != Phase::Intake) invalid(s, "submit an inquiry");
  Session next = s;
  next.inquiry = make_inquiry(inquiry.question, inquiry.name);
  next.state = {Phase::Casting, 0};
  next.updated_at = now;
  return next;
}

TossOutcome perform_toss(const Session& s, const GenParams& params, std::int64_t now) {
  if (s.state.phase != Phase::Casting || s.state.tosses_done >= 6) invalid(s, "toss");
  const int k = s.state.tosses_done;
  const int line_index = k + 1;

  TossOutcome out{s, toss_for(s.seed, s.epoch, k), {}, {}};
  out.line = line_from_toss(out.toss);
  out.layer = layer_for_line(out.line, line_index, params, s.seed,
                             stream_id(s.epoch, StreamPurpose::Layer,
                                       static_cast<std::uint64_t>(line_index)));
  Session& next = out.session;
  next.record.append(out.toss);
  next.layers = accumulate_layers(next.layers, out.layer);
  next.state = line_index == 6 ? SessionState{Phase::Interpreting, 6} : SessionState{Phase::Casting, line_index};
  next.updated_at = now;
  return out;
}

PromptDocument prompt_for(const Session& s, const Corpus& corpus, const AssembleOptions& options) {
  if (s.state.phase != Phase::Interpreting) invalid(s, "interpret");
  if (!s.inquiry) throw Error(ErrorCode::IncompleteCasting, "session has no inquiry");
  return assemble_prompt(*s.inquiry, s.record, corpus, options);
}

Session apply_interpretation(const Session& s, std::string_view raw_output,
                             std::string_view provider_id, std::string_view template_version,
                             std::int64_t now) {
  if (s.state.phase != Phase::Interpreting) invalid(s, "interpret");
  if (!s.record.complete()) throw Error(ErrorCode::IncompleteCasting, "casting is not complete");
  Session next = s;
  next.reading = parse_reading(raw_output, provider_id, template_version);
  next.plan = build_music_plan(*next.reading, next.record);
  next.state = {Phase::Playback, 6};
  next.updated_at = now;
  return next;
}

Session finish(const Session& s, std::int64_t now) {
  if (s.state.phase != Phase::Playback) invalid(s, "finish playback");
  Session next = s;
  next.state = {Phase::Complete, 6};
  next.updated_at = now;
  return next;
}

Session reset(const Session& s, std::int64_t now) {
  Session next = create(s.id, s.seed, s.created_at);
  next.epoch = s.epoch + 1;
  next.updated_at = now;
  return next;
}

const MusicPlan& plan_of(const Session& s) {
  if (!s.plan) throw Error(ErrorCode::PlanNotReady, "no music plan yet (state " + to_string(s.state) + ")");
  return *s.plan;
}

std::uint64_t ambient_seed(const Session& s) {
  return derive_stream_seed(s.seed, stream_id(s.epoch, StreamPurpose::Ambient));
}

PlaybackChunk playback(const Session& s, double from_time, double window_seconds,
                       const GenParams& params) {
  switch (s.state.phase) {
    case Phase::Intake:
      invalid(s, "stream playback");
    case Phase::Playback:
    case Phase::Complete:
      return chunk_stream(render_ambient(plan_of(s), ambient_seed(s)), from_time, window_seconds);
    case Phase::Casting:
    case Phase::Interpreting:
      break;
  }
  if (s.layers.empty()) {
    EventStream silent;
    silent.tempo = params.tempo;
    return chunk_stream(silent, from_time, window_seconds);
  }
  Beats longest;
  for (const auto& layer : s.layers) longest = std::max(longest, layer.loop_length);
  const double cycle_seconds = longest.seconds(params.tempo);
  const int cycles =
      std::max(1, static_cast<int>(std::ceil((from_time + window_seconds) / cycle_seconds)));
  return chunk_stream(render_casting(s.layers, cycles, params), from_time, window_seconds);
}

}  // namespace ritual

nlohmann::json layer_summary(const LoopLayer& layer) {
  return {{"instrument", to_string(layer.instrument)},
          {"line_index", layer.line_index},
          {"loop_length", layer.loop_length.value()},
          {"notes", layer.loop.size()},
          {"pan", layer.pan}};
}

namespace {

nlohmann::json inquiry_json(const std::optional<Inquiry>& inquiry) {
  if (!inquiry) return nullptr;
  return {{"name", inquiry->name ? nlohmann::json(*inquiry->name) : nlohmann::json(nullptr)},
          {"question", inquiry->question}};
}

}  // namespace

nlohmann::json to_json(const Session& s) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : s.layers) layers.push_back(to_json(l));
  return {{"created_at", s.created_at},
          {"epoch", s.epoch},
          {"id", s.id},
          {"inquiry", inquiry_json(s.inquiry)},
          {"layers", std::move(layers)},
          {"plan", s.plan ? to_json(*s.plan) : nlohmann::json(nullptr)},
          {"reading", s.reading ? to_json(*s.reading) : nlohmann::json(nullptr)},
          {"record", to_json(s.record)},
          {"seed", std::to_string(s.seed)},
          {"state", to_string(s.state)},
          {"updated_at", s.updated_at}};
}

std::string canonical_json(const Session& s) { return to_json(s).dump(); }

nlohmann::json session_view(const Session& s) {
  const bool revealed = s.state.phase == Phase::Interpreting || s.state.phase == Phase::Playback ||
                        s.state.phase == Phase::Complete;
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : s.layers) layers.push_back(layer_summary(l));
  nlohmann::json coins = nlohmann::json::array();
  for (const auto& t : s.record.tosses()) coins.push_back(to_json(t).at("coins"));

  nlohmann::json view = {{"coins", std::move(coins)},
                         {"id", s.id},
                         {"inquiry", inquiry_json(s.inquiry)},
                         {"layers", std::move(layers)},
                         {"seed", std::to_string(s.seed)},
                         {"state", to_string(s.state)},
                         {"tosses_done", s.record.tosses().size()}};
  if (revealed) {
    view["record"] = to_json(s.record);
    view["reading"] = s.reading ? to_json(*s.reading) : nlohmann::json(nullptr);
    view["plan"] = s.plan ? to_json(*s.plan) : nlohmann::json(nullptr);
  }
  return view;
}

}  // namespace iching
