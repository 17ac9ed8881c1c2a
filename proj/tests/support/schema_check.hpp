#pragma once
// Just enough JSON Schema for the plan schema: type, required, properties,
// additionalProperties (false), items, minItems, contains, minLength,
// pattern, minimum, maximum, exclusiveMinimum and local $ref.

#include <regex>
#include <string>
#include <vector>

#include "json.hpp"

namespace schema_test {

class Checker {
 public:
  explicit Checker(nlohmann::json schema) : root_(std::move(schema)) {}

  // Empty when valid.
  std::vector<std::string> errors(const nlohmann::json& doc) const {
    std::vector<std::string> out;
    check(root_, doc, "$", out);
    return out;
  }

 private:
  const nlohmann::json& resolve(const nlohmann::json& s) const {
    if (!s.contains("$ref")) return s;
    const auto ref = s.at("$ref").get<std::string>();
    if (ref.rfind("#/", 0) != 0) throw std::runtime_error("unsupported $ref " + ref);
    return root_.at(nlohmann::json::json_pointer(ref.substr(1)));
  }

  static bool has_type(const nlohmann::json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    return false;
  }

  void check(const nlohmann::json& schema, const nlohmann::json& v, const std::string& at,
             std::vector<std::string>& out) const {
    const auto& s = resolve(schema);
    if (s.contains("type") && !has_type(v, s.at("type").get<std::string>())) {
      out.push_back(at + ": expected " + s.at("type").get<std::string>());
      return;
    }
    if (v.is_object()) {
      for (const auto& key : s.value("required", nlohmann::json::array())) {
        if (!v.contains(key.get<std::string>())) out.push_back(at + ": missing " + key.get<std::string>());
      }
      const auto props = s.value("properties", nlohmann::json::object());
      for (const auto& [key, value] : v.items()) {
        if (props.contains(key)) {
          check(props.at(key), value, at + "." + key, out);
        } else if (s.contains("additionalProperties") && s.at("additionalProperties") == false) {
          out.push_back(at + ": unexpected " + key);
        }
      }
    }
    if (v.is_array()) {
      if (s.contains("minItems") && v.size() < s.at("minItems").get<std::size_t>()) {
        out.push_back(at + ": too few items");
      }
      if (s.contains("items")) {
        for (std::size_t i = 0; i < v.size(); ++i) check(s.at("items"), v[i], at + "[" + std::to_string(i) + "]", out);
      }
      if (s.contains("contains")) {
        bool any = false;
        for (const auto& item : v) {
          std::vector<std::string> scratch;
          check(s.at("contains"), item, at, scratch);
          any = any || scratch.empty();
        }
        if (!any) out.push_back(at + ": no item matches `contains`");
      }
    }
    if (v.is_string()) {
      const auto str = v.get<std::string>();
      if (s.contains("minLength") && str.size() < s.at("minLength").get<std::size_t>()) {
        out.push_back(at + ": string too short");
      }
      if (s.contains("pattern") && !std::regex_search(str, std::regex(s.at("pattern").get<std::string>()))) {
        out.push_back(at + ": pattern mismatch");
      }
    }
    if (v.is_number()) {
      const double x = v.get<double>();
      if (s.contains("minimum") && x < s.at("minimum").get<double>()) out.push_back(at + ": below minimum");
      if (s.contains("maximum") && x > s.at("maximum").get<double>()) out.push_back(at + ": above maximum");
      if (s.contains("exclusiveMinimum") && x <= s.at("exclusiveMinimum").get<double>()) {
        out.push_back(at + ": not above exclusiveMinimum");
      }
    }
  }

  nlohmann::json root_;
};

}  // namespace schema_test
