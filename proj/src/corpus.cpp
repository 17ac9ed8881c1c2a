#include "iching/corpus.hpp"

#include <fstream>
#include <sstream>

#include "iching/error.hpp"

namespace iching {

namespace {

std::string required_text(const nlohmann::json& obj, const char* key, int king_wen) {
  if (!obj.contains(key) || !obj.at(key).is_string()) {
    throw Error(ErrorCode::SchemaError,
                "corpus entry " + std::to_string(king_wen) + " is missing `" + key + "`");
  }
  auto text = obj.at(key).get<std::string>();
  if (text.empty()) {
    throw Error(ErrorCode::SchemaError,
                "corpus entry " + std::to_string(king_wen) + " has empty `" + key + "`");
  }
  return text;
}

}  // namespace

Corpus Corpus::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::SchemaError, "corpus must be a JSON array");
  if (j.size() != 64) {
    throw Error(ErrorCode::SchemaError,
                "corpus must have 64 entries, found " + std::to_string(j.size()));
  }
  Corpus corpus;
  corpus.entries_.resize(64);
  std::array<bool, 64> seen{};
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("king_wen") || !item.at("king_wen").is_number_integer()) {
      throw Error(ErrorCode::SchemaError, "corpus entry without integer `king_wen`");
    }
    const int kw = item.at("king_wen").get<int>();
    if (kw < 1 || kw > 64) {
      throw Error(ErrorCode::SchemaError, "king_wen out of range: " + std::to_string(kw));
    }
    if (seen[kw - 1]) {
      throw Error(ErrorCode::SchemaError, "duplicate king_wen " + std::to_string(kw));
    }
    seen[kw - 1] = true;

    CorpusEntry entry;
    entry.king_wen = kw;
    entry.name_pinyin = required_text(item, "name_pinyin", kw);
    entry.name_translated = required_text(item, "name_translated", kw);
    entry.gua_ci = required_text(item, "gua_ci", kw);
    if (!item.contains("yao_ci") || !item.at("yao_ci").is_array() || item.at("yao_ci").size() != 6) {
      throw Error(ErrorCode::SchemaError,
                  "corpus entry " + std::to_string(kw) + " needs six yao_ci");
    }
    for (std::size_t i = 0; i < 6; ++i) {
      const auto& text = item.at("yao_ci")[i];
      if (!text.is_string() || text.get<std::string>().empty()) {
        throw Error(ErrorCode::SchemaError, "corpus entry " + std::to_string(kw) +
                                                " has an empty yao_ci at line " +
                                                std::to_string(i + 1));
      }
      entry.yao_ci[i] = text.get<std::string>();
    }
    corpus.entries_[kw - 1] = std::move(entry);
  }
  return corpus;
}

const CorpusEntry& Corpus::entry(int king_wen) const {
  if (king_wen < 1 || king_wen > static_cast<int>(entries_.size()) ||
      entries_[king_wen - 1].king_wen != king_wen) {
    throw Error(ErrorCode::CorpusMissingEntry, "no corpus entry for " + std::to_string(king_wen));
  }
  return entries_[king_wen - 1];
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open corpus file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, "corpus is not valid JSON: " + std::string(e.what()));
  }
  return Corpus::from_json(j);
}

const Corpus& bundled_corpus() {
  static const Corpus corpus = Corpus::from_json(nlohmann::json::parse(bundled_corpus_json()));
  return corpus;
}

DivinationTexts lookup_texts(const Corpus& corpus, const CastingRecord& record) {
  auto ben = record.ben_gua();
  auto zhi = record.zhi_gua();
  if (!ben || !zhi) throw Error(ErrorCode::IncompleteCasting, "casting has fewer than six lines");

  const auto& ben_entry = corpus.entry(ben->king_wen());
  DivinationTexts texts;
  texts.gua_ci_ben = ben_entry.gua_ci;
  for (int index : record.dong_yao()) {
    texts.yao_ci_changing.emplace_back(index, ben_entry.yao_ci[index - 1]);
  }
  texts.gua_ci_zhi = corpus.entry(zhi->king_wen()).gua_ci;
  return texts;
}

}  // namespace iching
