#include "iching/http_api.hpp"

#include "httplib.h"

namespace iching {

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidState:
    case ErrorCode::Busy:
    case ErrorCode::PlanNotReady:
      return 409;
    case ErrorCode::UnknownSession:
      return 404;
    case ErrorCode::EmptyQuestion:
      return 422;
    case ErrorCode::ProviderUnavailable:
      return 503;
    case ErrorCode::MalformedProviderOutput:
      return 502;
    case ErrorCode::InvalidArgument:
    case ErrorCode::SchemaError:
      return 400;
    default:
      return 500;
  }
}

namespace {

void send_json(httplib::Response& res, const nlohmann::json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& message) {
  send_json(res, {{"code", code}, {"message", message}}, status);
}

using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

Handler guarded(Handler inner) {
  return [inner = std::move(inner)](const httplib::Request& req, httplib::Response& res) {
    try {
      inner(req, res);
    } catch (const Error& e) {
      send_error(res, http_status(e.code()), to_string(e.code()), e.what());
    } catch (const nlohmann::json::exception& e) {
      send_error(res, 400, "bad_request", e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "internal", e.what());
    }
  };
}

nlohmann::json body_of(const httplib::Request& req) {
  if (req.body.empty()) return nlohmann::json::object();
  auto j = nlohmann::json::parse(req.body);
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "request body must be a JSON object");
  return j;
}

double query_number(const httplib::Request& req, const char* key, double fallback) {
  if (!req.has_param(key)) return fallback;
  try {
    return std::stod(req.get_param_value(key));
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, std::string("query parameter `") + key + "` is not a number");
  }
}

std::optional<std::uint64_t> seed_of(const nlohmann::json& body) {
  if (!body.contains("seed") || body.at("seed").is_null()) return std::nullopt;
  const auto& s = body.at("seed");
  if (s.is_number_unsigned()) return s.get<std::uint64_t>();
  if (s.is_string()) {
    try {
      return std::stoull(s.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorCode::InvalidArgument, "seed must be a non-negative integer or decimal string");
}

}  // namespace

void install_routes(httplib::Server& server, SessionService& service) {
  server.Post("/sessions", guarded([&](const httplib::Request& req, httplib::Response& res) {
    send_json(res, session_view(service.create_session(seed_of(body_of(req)))), 201);
  }));
  server.Get(R"(/sessions/([^/]+))", guarded([&](const httplib::Request& req, httplib::Response& res) {
    send_json(res, session_view(service.snapshot(req.matches[1])));
  }));
  server.Post(R"(/sessions/([^/]+)/inquiry)", guarded([&](const httplib::Request& req, httplib::Response& res) {
    const auto body = body_of(req);
    if (!body.contains("question") || !body.at("question").is_string()) {
      throw Error(ErrorCode::EmptyQuestion, "the question must not be empty");
    }
    std::optional<std::string> name;
    if (body.contains("name") && body.at("name").is_string()) name = body.at("name").get<std::string>();
    send_json(res, session_view(service.submit_inquiry(req.matches[1], body.at("question").get<std::string>(), name)));
  }));
  server.Post(R"(/sessions/([^/]+)/toss)", guarded([&](const httplib::Request& req, httplib::Response& res) {
    const auto outcome = service.toss(req.matches[1]);
    send_json(res, {{"coins", to_json(outcome.toss).at("coins")},
                    {"layer_summary", layer_summary(outcome.layer)},
                    {"state", to_string(outcome.session.state)},
                    {"toss_index", outcome.session.record.tosses().size()}});
  }));
  server.Post(R"(/sessions/([^/]+)/interpret)", guarded([&](const httplib::Request& req, httplib::Response& res) {
    send_json(res, session_view(service.interpret(req.matches[1])));
  }));
  server.Post(R"(/sessions/([^/]+)/complete)", guarded([&](const httplib::Request& req, httplib::Response& res) {
    send_json(res, session_view(service.finish(req.matches[1])));
  }));
  server.Post(R"(/sessions/([^/]+)/reset)", guarded([&](const httplib::Request& req, httplib::Response& res) {
    send_json(res, session_view(service.reset(req.matches[1])));
  }));
  server.Get(R"(/sessions/([^/]+)/plan)", guarded([&](const httplib::Request& req, httplib::Response& res) {
    send_json(res, to_json(service.plan(req.matches[1])));
  }));
  server.Get(R"(/sessions/([^/]+)/playback)", guarded([&](const httplib::Request& req, httplib::Response& res) {
    const double from = query_number(req, "from", 0.0);
    const double window = query_number(req, "window", 10.0);
    send_json(res, to_json(service.playback(req.matches[1], from, window)));
  }));
}

bool serve(SessionService& service, const std::string& host, int port) {
  httplib::Server server;
  install_routes(server, service);
  return server.listen(host, port);
}

}  // namespace iching
