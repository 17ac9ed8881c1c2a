#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "iching/casting.hpp"

namespace iching {

struct CorpusEntry {
  int king_wen = 0;
  std::string name_pinyin;
  std::string name_translated;
  std::string gua_ci;
  std::array<std::string, 6> yao_ci;  // [0] = bottom line
};

// A validated set of 64 entries, one per King Wen number.
class Corpus {
 public:
  // Corpus file schema: JSON array of 64 objects with `king_wen`,
  // `name_pinyin`, `name_translated`, `gua_ci` and `yao_ci` (six strings,
  // bottom line first). Throws SchemaError on any violation.
  static Corpus from_json(const nlohmann::json& j);

  const CorpusEntry& entry(int king_wen) const;

 private:
  std::vector<CorpusEntry> entries_;  // index king_wen - 1
};

Corpus load_corpus(const std::filesystem::path& path);

// Abridged English rendering compiled into the library.
const Corpus& bundled_corpus();
std::string_view bundled_corpus_json();

struct DivinationTexts {
  std::string gua_ci_ben;
  std::vector<std::pair<int, std::string>> yao_ci_changing;  // ascending line order
  std::string gua_ci_zhi;
};

DivinationTexts lookup_texts(const Corpus& corpus, const CastingRecord& record);

}  // namespace iching
