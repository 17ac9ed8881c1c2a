#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "iching/casting.hpp"
#include "iching/chance_music.hpp"
#include "iching/corpus.hpp"
#include "iching/error.hpp"
#include "iching/interpretation.hpp"
#include "iching/midi.hpp"
#include "iching/service.hpp"

namespace py = pybind11;
using namespace iching;

namespace {

py::bytes midi_bytes(const EventStream& stream) {
  const auto bytes = write_midi(stream);
  return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

GenParams params_from(const std::string& params_json) {
  GenParams p = params_json.empty() ? GenParams{} : gen_params_from_json(nlohmann::json::parse(params_json));
  p.validate();
  return p;
}

std::vector<LoopLayer> casting_layers(const CastingRecord& record, const GenParams& params) {
  std::vector<LoopLayer> layers;
  for (int i = 1; i <= 6; ++i) {
    layers = accumulate_layers(layers, layer_for_line(record.lines()[i - 1], i, params, record.seed(),
                                                      stream_id(0, StreamPurpose::Layer, i)));
  }
  return layers;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "I-Ching casting and sonification core";

  static py::exception<Error> error(m, "IChingError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = py::reinterpret_borrow<py::object>(error)(py::str(e.what()));
      instance.attr("code") = py::str(std::string(to_string(e.code())));
      PyErr_SetObject(error.ptr(), instance.ptr());
    }
  });

  m.def("king_wen_number", [](int pattern) {
    if (pattern < 0 || pattern > 63) throw Error(ErrorCode::IndexOutOfRange, "pattern must be 0..63");
    return king_wen_number(static_cast<LinePattern>(pattern));
  }, py::arg("pattern"));
  m.def("pattern_for_king_wen", [](int k) { return static_cast<int>(pattern_for_king_wen(k)); },
        py::arg("king_wen"));
  m.def("derive_zhi_gua", [](int king_wen, const std::vector<int>& dong_yao) {
    return derive_zhi_gua(Hexagram::from_king_wen(king_wen), dong_yao).king_wen();
  }, py::arg("king_wen"), py::arg("dong_yao"));

  m.def("cast_json", [](std::uint64_t seed) { return canonical_json(cast_hexagram(seed)); },
        py::arg("seed"));
  m.def("render_casting_midi", [](std::uint64_t seed, int cycles, const std::string& params_json) {
    const auto params = params_from(params_json);
    return midi_bytes(render_casting(casting_layers(cast_hexagram(seed), params), cycles, params));
  }, py::arg("seed"), py::arg("cycles") = 2, py::arg("params_json") = "");
  m.def("interpret_json", [](std::uint64_t seed, const std::string& question,
                             std::optional<std::string> name, bool include_name) {
    const auto record = cast_hexagram(seed);
    const auto doc = assemble_prompt(make_inquiry(question, std::move(name)), record, bundled_corpus(),
                                     {.include_name = include_name});
    MockProvider mock;
    const auto reading = interpret(doc, mock);
    const auto plan = build_music_plan(reading, record);
    return nlohmann::json{{"plan", to_json(plan)}, {"prompt", to_json(doc)},
                          {"reading", to_json(reading)}, {"record", to_json(record)}}.dump();
  }, py::arg("seed"), py::arg("question"), py::arg("name") = py::none(), py::arg("include_name") = true);
  m.def("render_ambient_midi", [](const std::string& plan_json, std::uint64_t seed) {
    return midi_bytes(render_ambient(music_plan_from_json(nlohmann::json::parse(plan_json)), seed));
  }, py::arg("plan_json"), py::arg("seed"));
  m.def("cage_midi", [](int n_events, std::uint64_t seed, const std::string& charts_json, double tempo) {
    const auto charts = charts_json.empty() ? demo_charts() : charts_from_json(nlohmann::json::parse(charts_json));
    return midi_bytes(cage_compose(n_events, charts, seed, tempo));
  }, py::arg("n_events"), py::arg("seed"), py::arg("charts_json") = "", py::arg("tempo") = 72.0);
  m.def("replay_session_json", [](const std::string& log_path, const std::string& id) {
    return canonical_json(replay_session(std::filesystem::path(log_path), id));
  }, py::arg("log_path"), py::arg("session_id"));
}
