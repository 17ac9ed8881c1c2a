#include "iching/remote_provider.hpp"

#include <cstdlib>
#include <fstream>
#include <regex>

#include "httplib.h"

#include "iching/error.hpp"

namespace iching {

namespace {

std::string env_or(const char* name, std::string fallback) {
  const char* value = std::getenv(name);
  return value != nullptr ? std::string(value) : std::move(fallback);
}

class RemoteProvider final : public InterpretationProvider {
 public:
  explicit RemoteProvider(RemoteProviderConfig config) : config_(std::move(config)) {
    static const std::regex url(R"(^(https?://[^/]+)(/.*)?$)");
    std::smatch m;
    if (!std::regex_match(config_.endpoint, m, url)) {
      throw Error(ErrorCode::ProviderUnavailable, "invalid provider endpoint `" + config_.endpoint + "`");
    }
    origin_ = m[1];
    path_ = m[2].matched ? std::string(m[2]) : "/";
  }

  std::string id() const override { return "remote:" + config_.model; }

  std::string complete(const PromptDocument& doc) override {
    const char* key = std::getenv(config_.key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw Error(ErrorCode::ProviderUnavailable,
                  "provider key variable " + config_.key_env + " is not set");
    }
    const nlohmann::json request = {{"document", to_json(doc)},
                                    {"model", config_.model},
                                    {"prompt", render_prompt_text(doc)},
                                    {"template_version", doc.template_version}};

    httplib::Client client(origin_);
    client.set_connection_timeout(config_.timeout_seconds);
    client.set_read_timeout(config_.timeout_seconds);
    client.set_bearer_token_auth(key);
    auto response = client.Post(path_, request.dump(), "application/json");
    if (!response) {
      throw Error(ErrorCode::ProviderUnavailable,
                  "provider request failed: " + httplib::to_string(response.error()));
    }
    if (response->status != 200) {
      throw Error(ErrorCode::ProviderUnavailable,
                  "provider answered HTTP " + std::to_string(response->status), response->body);
    }
    return response->body;
  }

 private:
  RemoteProviderConfig config_;
  std::string origin_;
  std::string path_;
};

}  // namespace

RemoteProviderConfig RemoteProviderConfig::from_env() {
  RemoteProviderConfig c;
  c.endpoint = env_or("ICHING_PROVIDER_ENDPOINT", "");
  c.model = env_or("ICHING_PROVIDER_MODEL", "");
  c.key_env = env_or("ICHING_PROVIDER_KEY_ENV", c.key_env);
  return c;
}

RemoteProviderConfig RemoteProviderConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open provider config " + path.string());
  RemoteProviderConfig c;
  try {
    const auto j = nlohmann::json::parse(in);
    c.endpoint = j.value("endpoint", "");
    c.model = j.value("model", "");
    c.key_env = j.value("key_env", c.key_env);
    c.timeout_seconds = j.value("timeout_seconds", c.timeout_seconds);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("malformed provider config: ") + e.what());
  }
  return c;
}

std::unique_ptr<InterpretationProvider> remote_provider_stub(const RemoteProviderConfig& config) {
  if (!config.configured()) {
    throw Error(ErrorCode::ProviderUnavailable, "remote provider needs an endpoint and a model");
  }
  return std::make_unique<RemoteProvider>(config);
}

}  // namespace iching
