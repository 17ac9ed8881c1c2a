#pragma once

#include <string>

#include "iching/error.hpp"
#include "iching/service.hpp"

namespace httplib {
class Server;
}

namespace iching {

int http_status(ErrorCode code);

// Routes, all JSON:
//   POST /sessions                      {"seed"?}           -> session view
//   GET  /sessions/{id}                                     -> session view
//   POST /sessions/{id}/inquiry         {"question", "name"?}
//   POST /sessions/{id}/toss                                -> toss_index, coins, layer_summary
//   POST /sessions/{id}/interpret
//   POST /sessions/{id}/complete
//   POST /sessions/{id}/reset
//   GET  /sessions/{id}/plan
//   GET  /sessions/{id}/playback?from=&window=
// Errors answer {"code", "message"} with the status from http_status.
void install_routes(httplib::Server& server, SessionService& service);

// Blocks until the server stops.
bool serve(SessionService& service, const std::string& host, int port);

}  // namespace iching
