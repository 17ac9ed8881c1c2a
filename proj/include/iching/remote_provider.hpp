#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "iching/interpretation.hpp"

namespace iching {

// Connection settings for a hosted language model. The key itself never
// lives in configuration: `key_env` names the environment variable that
// holds it.
struct RemoteProviderConfig {
  std::string endpoint;  // http(s)://host[:port]/path
  std::string model;
  std::string key_env = "ICHING_PROVIDER_KEY";
  int timeout_seconds = 30;

  bool configured() const { return !endpoint.empty() && !model.empty(); }

  // ICHING_PROVIDER_ENDPOINT, ICHING_PROVIDER_MODEL, ICHING_PROVIDER_KEY_ENV.
  static RemoteProviderConfig from_env();
  // {"endpoint": ..., "model": ..., "key_env": ..., "timeout_seconds": ...}
  static RemoteProviderConfig from_file(const std::filesystem::path& path);
};

// Forwards each document as
//   POST <endpoint>
//   Authorization: Bearer <$key_env>
//   {"model", "template_version", "prompt": render_prompt_text(doc),
//    "document": to_json(doc)}
// and expects a 200 response whose body is the reading JSON accepted by
// parse_reading. Transport, status and auth failures throw
// ProviderUnavailable.
std::unique_ptr<InterpretationProvider> remote_provider_stub(const RemoteProviderConfig& config);

}  // namespace iching
