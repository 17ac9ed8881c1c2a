#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "iching/hexagram.hpp"

namespace iching {

// Progress of one Wen Wang Fa casting: up to six tosses, bottom line first.
class CastingRecord {
 public:
  explicit CastingRecord(std::uint64_t seed = 0) : seed_(seed) {}

  // Appends the next toss and its line. Throws InvalidState after six.
  void append(const CoinToss& toss);

  std::uint64_t seed() const { return seed_; }
  const std::vector<CoinToss>& tosses() const { return tosses_; }
  const std::vector<Line>& lines() const { return lines_; }
  bool complete() const { return lines_.size() == 6; }

  // Ascending indices (1..6) of the changing lines cast so far.
  std::vector<int> dong_yao() const;

  // Present only once all six lines are cast. Zhi Gua equals Ben Gua when
  // nothing changes.
  std::optional<Hexagram> ben_gua() const;
  std::optional<Hexagram> zhi_gua() const;

  friend bool operator==(const CastingRecord&, const CastingRecord&) = default;

 private:
  std::uint64_t seed_;
  std::vector<CoinToss> tosses_;
  std::vector<Line> lines_;
};

// Toss k (0-based) of a ritual drawn from its own sub-stream.
CoinToss toss_for(std::uint64_t seed, std::uint64_t epoch, int toss_index);

// All six tosses of one ritual.
CastingRecord cast_hexagram(std::uint64_t seed, std::uint64_t epoch = 0);

nlohmann::json to_json(const Hexagram& hexagram);
nlohmann::json to_json(const CoinToss& toss);
nlohmann::json to_json(const Line& line);

// Canonical form: keys sorted, seed as a decimal string, coins as "H"/"T"
// letters, lines bottom-first, hexagrams null until complete.
nlohmann::json to_json(const CastingRecord& record);
CastingRecord casting_record_from_json(const nlohmann::json& j);

std::string canonical_json(const CastingRecord& record);

}  // namespace iching
