// Command-line front end: casting, chance music, interpretation, Cage-style
// composition and the session server.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "iching/casting.hpp"
#include "iching/chance_music.hpp"
#include "iching/corpus.hpp"
#include "iching/error.hpp"
#include "iching/http_api.hpp"
#include "iching/interpretation.hpp"
#include "iching/midi.hpp"
#include "iching/remote_provider.hpp"
#include "iching/service.hpp"

namespace {

using namespace iching;

constexpr int kExitUsage = 2;
constexpr int kExitProvider = 3;
constexpr int kExitIo = 4;

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
}

void write_midi_file(const std::string& path, const EventStream& stream) {
  const auto bytes = write_midi(stream);
  write_file(path, std::string(bytes.begin(), bytes.end()));
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  const auto s = entropy_seed();
  std::cerr << "seed: " << s << '\n';
  return s;
}

GenParams load_params(const std::string& path) {
  GenParams params = path.empty() ? GenParams{} : gen_params_from_json(read_json_file(path));
  params.validate();
  return params;
}

std::shared_ptr<const Corpus> load_corpus_option(const std::string& path) {
  if (path.empty()) return std::shared_ptr<const Corpus>(&bundled_corpus(), [](const Corpus*) {});
  return std::make_shared<const Corpus>(load_corpus(path));
}

struct ProviderOptions {
  std::string kind = "mock";
  std::string config_path;
};

std::shared_ptr<InterpretationProvider> make_provider(const ProviderOptions& o) {
  if (o.kind == "mock") return std::make_shared<MockProvider>();
  const auto config =
      o.config_path.empty() ? RemoteProviderConfig::from_env() : RemoteProviderConfig::from_file(o.config_path);
  return remote_provider_stub(config);
}

void add_provider_options(CLI::App* cmd, ProviderOptions& o) {
  cmd->add_option("--provider", o.kind, "Interpretation provider")
      ->check(CLI::IsMember({"mock", "remote"}))
      ->capture_default_str();
  cmd->add_option("--provider-config", o.config_path,
                  "JSON file with endpoint, model, key_env (remote provider); "
                  "defaults to ICHING_PROVIDER_* variables");
}

void print_record(const CastingRecord& record) {
  const auto& lines = record.lines();
  for (int i = 6; i >= 1; --i) {
    const Line& line = lines[i - 1];
    const char* glyph = line.polarity == Polarity::Yang ? "---------" : "---   ---";
    std::printf("%d  %s  %d %s%s\n", i, glyph, line.source_sum, std::string(to_string(line.type())).c_str(),
                line.changing ? "  *" : "");
  }
  const auto ben = *record.ben_gua();
  const auto zhi = *record.zhi_gua();
  std::printf("ben gua %d, zhi gua %d, changing lines:", ben.king_wen(), zhi.king_wen());
  const auto moving = record.dong_yao();
  if (moving.empty()) std::printf(" none");
  for (int i : moving) std::printf(" %d", i);
  std::printf("\n");
}

int run(int argc, char** argv) {
  CLI::App app{"I-Ching casting, chance music and ambient sonification"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::string out;
  bool as_json = false;

  // cast
  auto* cast = app.add_subcommand("cast", "Cast a hexagram with three coins, six times");
  cast->add_option("--seed", seed, "Casting seed");
  cast->add_flag("--json", as_json, "Print the canonical casting record");

  // render-casting
  std::string params_path;
  int cycles = 2;
  auto* render = app.add_subcommand("render-casting", "Render the six loop layers of a casting to MIDI");
  render->add_option("--seed", seed, "Casting seed");
  render->add_option("--params", params_path, "Generation parameters JSON (partial overrides)");
  render->add_option("--cycles", cycles, "Repetitions of the longest loop")->check(CLI::PositiveNumber)->capture_default_str();
  render->add_option("--out", out, "MIDI output file")->required();
  std::string events_path;
  render->add_option("--events", events_path, "Also write the event stream as JSON");

  // interpret
  std::string question, name, corpus_path, plan_out;
  bool no_name = false;
  ProviderOptions provider_opts;
  auto* interpret_cmd = app.add_subcommand("interpret", "Cast, interpret and derive a music plan");
  interpret_cmd->add_option("--seed", seed, "Casting seed");
  interpret_cmd->add_option("--question", question, "The question put to the oracle")->required();
  interpret_cmd->add_option("--name", name, "Name of the person asking");
  interpret_cmd->add_flag("--no-name", no_name, "Keep the name out of the provider document");
  interpret_cmd->add_option("--corpus", corpus_path, "Text corpus JSON (default: bundled)");
  interpret_cmd->add_option("--out", plan_out, "Write the music plan JSON here");
  interpret_cmd->add_flag("--json", as_json, "Print record, reading and plan as JSON");
  add_provider_options(interpret_cmd, provider_opts);

  // ambient
  std::string plan_path;
  auto* ambient = app.add_subcommand("ambient", "Realize a music plan as an ambient MIDI piece");
  ambient->add_option("--plan", plan_path, "Music plan JSON")->required();
  ambient->add_option("--seed", seed, "Realization seed");
  ambient->add_option("--out", out, "MIDI output file")->required();

  // cage
  std::string charts_path;
  int n_events = 16;
  double tempo = 72.0;
  auto* cage = app.add_subcommand("cage", "Compose by chart lookup, one casting per event");
  cage->add_option("--n-events", n_events, "Number of events")->check(CLI::PositiveNumber)->capture_default_str();
  cage->add_option("--charts", charts_path, "Chart JSON (default: bundled demo charts)");
  cage->add_option("--seed", seed, "Composition seed");
  cage->add_option("--tempo", tempo, "Tempo in BPM")->check(CLI::PositiveNumber)->capture_default_str();
  cage->add_option("--out", out, "MIDI output file")->required();

  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string log_path;
  int ttl_seconds = 3600;
  bool hide_name = false;
  auto* serve_cmd = app.add_subcommand("serve", "Run the session HTTP service");
  serve_cmd->add_option("--host", host)->capture_default_str();
  serve_cmd->add_option("--port", port)->check(CLI::Range(1, 65535))->capture_default_str();
  serve_cmd->add_option("--log", log_path, "Append-only session event log (JSON Lines)");
  serve_cmd->add_option("--ttl", ttl_seconds, "Idle seconds before a session is evicted")->capture_default_str();
  serve_cmd->add_option("--params", params_path, "Generation parameters JSON");
  serve_cmd->add_option("--corpus", corpus_path, "Text corpus JSON (default: bundled)");
  serve_cmd->add_flag("--no-name", hide_name, "Keep names out of provider documents");
  add_provider_options(serve_cmd, provider_opts);

  // replay
  std::string session_id;
  auto* replay = app.add_subcommand("replay", "Rebuild a session from its event log");
  replay->add_option("--log", log_path, "Event log")->required();
  replay->add_option("--id", session_id, "Session id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*cast) {
    const auto record = cast_hexagram(resolve_seed(seed));
    if (as_json) {
      std::cout << canonical_json(record) << '\n';
    } else {
      print_record(record);
    }
  } else if (*render) {
    const auto params = load_params(params_path);
    const auto s = resolve_seed(seed);
    const auto record = cast_hexagram(s);
    std::vector<LoopLayer> layers;
    for (int i = 1; i <= 6; ++i) {
      layers = accumulate_layers(
          layers, layer_for_line(record.lines()[i - 1], i, params, s,
                                 stream_id(0, StreamPurpose::Layer, static_cast<std::uint64_t>(i))));
    }
    const auto stream = render_casting(layers, cycles, params);
    write_midi_file(out, stream);
    if (!events_path.empty()) write_file(events_path, canonical_json(stream) + '\n');
  } else if (*interpret_cmd) {
    const auto corpus = load_corpus_option(corpus_path);
    const auto record = cast_hexagram(resolve_seed(seed));
    const auto inquiry = make_inquiry(question, name.empty() ? std::nullopt : std::optional(name));
    const auto doc = assemble_prompt(inquiry, record, *corpus, {.include_name = !no_name});
    auto provider = make_provider(provider_opts);
    const auto reading = iching::interpret(doc, *provider);
    const auto plan = build_music_plan(reading, record);
    if (!plan_out.empty()) write_file(plan_out, to_json(plan).dump(2) + '\n');
    if (as_json) {
      std::cout << nlohmann::json{{"plan", to_json(plan)},
                                  {"reading", to_json(reading)},
                                  {"record", to_json(record)}}
                       .dump(2)
                << '\n';
    } else {
      print_record(record);
      std::cout << '\n' << reading.body << '\n';
    }
  } else if (*ambient) {
    const auto plan = music_plan_from_json(read_json_file(plan_path));
    write_midi_file(out, render_ambient(plan, resolve_seed(seed)));
  } else if (*cage) {
    const auto charts = charts_path.empty() ? demo_charts() : charts_from_json(read_json_file(charts_path));
    write_midi_file(out, cage_compose(n_events, charts, resolve_seed(seed), tempo));
  } else if (*serve_cmd) {
    ServiceConfig config;
    if (!log_path.empty()) config.log_path = log_path;
    config.ttl_ms = static_cast<std::int64_t>(ttl_seconds) * 1000;
    config.params = load_params(params_path);
    config.assemble.include_name = !hide_name;
    SessionService service(config, load_corpus_option(corpus_path), make_provider(provider_opts));
    std::cerr << "listening on http://" << host << ':' << port << '\n';
    if (!serve(service, host, port)) throw Error(ErrorCode::IoError, "cannot listen on port " + std::to_string(port));
  } else if (*replay) {
    std::cout << canonical_json(replay_session(std::filesystem::path(log_path), session_id)) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    if (!e.detail().empty()) std::cerr << e.detail() << '\n';
    switch (e.code()) {
      case ErrorCode::ProviderUnavailable:
      case ErrorCode::MalformedProviderOutput:
        return kExitProvider;
      case ErrorCode::IoError:
        return kExitIo;
      case ErrorCode::InvalidArgument:
      case ErrorCode::SchemaError:
      case ErrorCode::EmptyQuestion:
        return kExitUsage;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
